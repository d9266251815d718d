// Copyright 2026 The brlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/ensemble.hpp"

#include <atomic>

#include "core/parallel.hpp"

namespace brlab {

Vec6 RandomRegionPoint(const GameSystem& sys, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec3 p, q;
    for (int i = 0; i < 3; ++i) p(i) = expo(rng);
    for (int i = 0; i < 3; ++i) q(i) = expo(rng);
    p /= p.sum();
    q /= q.sum();
    const auto br = ComputeBestResponses(sys, p, q);
    const Vec6 x = Join(p, q);
    if (br.a.size() == 1 && br.b.size() == 1 &&
        (x - sys.equilibrium()).cwiseAbs().maxCoeff() > 1e-9) {
      return x;
    }
  }
  throw Error(ErrorCode::kInvalidInput, "could not sample a start off the planes");
}

EnsembleResult SimulateEnsemble(const GameSystem& sys, const EnsembleOptions& opts) {
  if (opts.initial) {
    const double slack = sys.tol().simplex;
    if (!InSimplex(opts.initial->head<3>(), slack) || !InSimplex(opts.initial->tail<3>(), slack)) {
      throw Error(ErrorCode::kInvalidInput, "initial point is outside the simplex",
                  *opts.initial);
    }
  }
  EnsembleResult out;
  out.orbits.resize(opts.orbits);
  out.seeds.resize(opts.orbits);
  std::atomic<std::size_t> resamples{0};
  ParallelFor(opts.orbits, [&](std::size_t i) {
    const uint64_t seed = opts.seed ^ static_cast<uint64_t>(i);
    out.seeds[i] = seed;
    std::mt19937_64 rng(seed);
    for (int attempt = 0;; ++attempt) {
      Vec6 x = opts.initial ? *opts.initial : RandomRegionPoint(sys, rng);
      try {
        if (opts.mode == FlowMode::kHamiltonian) {
          x = RadialProjection(sys, x);
          out.orbits[i] = IntegrateHamiltonian(sys, x, opts.transitions);
        } else {
          out.orbits[i] = IntegrateBestResponse(sys, x, opts.transitions);
        }
        return;
      } catch (const Error& e) {
        // Degenerate crossings have measure zero; redraw the start.
        if (e.code() != ErrorCode::kDegenerateCrossing || opts.initial ||
            attempt + 1 >= opts.max_resamples) {
          throw;
        }
        ++resamples;
      }
    }
  });
  out.resamples = resamples;
  return out;
}

}  // namespace brlab
