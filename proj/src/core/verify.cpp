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

#include "core/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "core/dynamics.hpp"
#include "core/ensemble.hpp"
#include "core/parallel.hpp"
#include "core/precise.hpp"
#include "core/reference.hpp"
#include "core/return_map.hpp"
#include "core/sections.hpp"

namespace brlab {

namespace {

PropertyResult Finish(PropertyResult r) {
  r.passed = r.passed && r.worst < r.threshold;
  if (r.detail.empty()) {
    std::ostringstream os;
    os << "worst " << r.worst << " over " << r.cases << " cases (limit "
       << r.threshold << ")";
    r.detail = os.str();
  }
  return r;
}

Vec6 Start(const GameSystem& sys, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return RandomRegionPoint(sys, rng);
}

}  // namespace

PropertyResult CheckHamiltonianConservation(const GameSystem& sys,
                                            const VerifyOptions& opts) {
  PropertyResult r{"hamiltonian_conservation", true, 0.0, 1e-9, 0, {}};
  for (std::size_t i = 0; i < opts.conservation_orbits; ++i) {
    const Vec6 x = RadialProjection(sys, Start(sys, opts.seed ^ (0x100 + i)));
    const Orbit o = IntegrateHamiltonian(sys, x, opts.conservation_transitions);
    r.worst = std::max(r.worst, o.max_drift);
    for (const auto& ev : o.events) {
      const double h = HamiltonianOfDisplacement(sys, ev.point - sys.equilibrium());
      r.worst = std::max(r.worst, std::abs(h - 1.0));
    }
    ++r.cases;
  }
  return Finish(r);
}

PropertyResult CheckLyapunovDecay(const GameSystem& sys, const VerifyOptions& opts) {
  PropertyResult r{"lyapunov_decay", true, 0.0, 1e-6, 0, {}};
  for (std::size_t i = 0; i < opts.lyapunov_orbits; ++i) {
    const Orbit o = IntegrateBestResponse(sys, Start(sys, opts.seed ^ (0x200 + i)),
                                          opts.lyapunov_transitions);
    const double h0 = o.initial_level;
    for (const auto& ev : o.events) {
      const double h = HamiltonianOfDisplacement(sys, ev.point - sys.equilibrium());
      r.worst = std::max(r.worst, std::abs(h * std::exp(ev.time) - h0) / h0);
    }
    ++r.cases;
  }
  return Finish(r);
}

PropertyResult CheckConjugacy(const GameSystem& sys, const VerifyOptions& opts) {
  PropertyResult r{"br_hamiltonian_conjugacy", true, 0.0, 1e-6, 0, {}};
  const std::size_t n = opts.conjugacy_transitions;
  std::vector<double> full(opts.conjugacy_orbits, 0.0), local(opts.conjugacy_orbits, 0.0);
  std::vector<char> same(opts.conjugacy_orbits, 0);
  ParallelFor(opts.conjugacy_orbits, [&](std::size_t i) {
    const Vec6 x = Start(sys, opts.seed ^ (0x300 + i));
    // Whole orbits, carried in multiprecision.
    const ConjugacyResult c = PreciseConjugacy(sys, x, n);
    same[i] = c.itinerary_matches;
    full[i] = c.point_error;
    // Double-precision integrators, one flight at a time from the projected
    // BR event.
    const Orbit o = IntegrateBestResponse(sys, x, n);
    Vec6 y = RadialProjection(sys, x);
    for (std::size_t k = 0; k < n; ++k) {
      const Step st = StepHamiltonian(sys, y, o.itinerary[k]);
      y = RadialProjection(sys, o.events[k].point);
      if (st.next != o.itinerary[k + 1]) same[i] = 0;
      local[i] = std::max(local[i], (st.point - y).cwiseAbs().maxCoeff());
    }
  });
  double worst_full = 0.0, worst_local = 0.0;
  for (std::size_t i = 0; i < opts.conjugacy_orbits; ++i) {
    if (!same[i]) {
      r.passed = false;
      r.detail = "itineraries differ for orbit " + std::to_string(i);
    }
    worst_full = std::max(worst_full, full[i]);
    worst_local = std::max(worst_local, local[i]);
    ++r.cases;
  }
  r.worst = std::max(worst_full, worst_local);
  if (r.detail.empty()) {
    std::ostringstream os;
    os << "whole orbits " << worst_full << ", per flight (double) " << worst_local
       << " over " << r.cases << " orbits x " << n << " transitions (limit "
       << r.threshold << ")";
    r.detail = os.str();
  }
  return Finish(r);
}

PropertyResult CheckReturnMapPrediction(const GameSystem& sys,
                                        const VerifyOptions& opts) {
  PropertyResult r{"return_map_prediction", true, 0.0, 1e-8, 0, {}};
  const Vec6 x = RadialProjection(sys, Start(sys, opts.seed ^ 0x400));
  const Orbit o = IntegrateHamiltonian(sys, x, 20 * opts.prediction_hits + 1000);
  // Consecutive hits of one plane on one piece bound a closed loop whose
  // composed map must carry the first hit onto the second.
  for (int side = 0; side < 2 && r.cases < opts.prediction_hits; ++side) {
    for (int lo = 0; lo < 3 && r.cases < opts.prediction_hits; ++lo) {
      for (int hi = lo + 1; hi < 3 && r.cases < opts.prediction_hits; ++hi) {
        const Plane plane{side ? Side::kB : Side::kA, lo, hi};
        const auto hits = SectionHits(sys, o, plane, BuildSectionCharts(sys, plane));
        for (std::size_t h = 0; h + 1 < hits.size() && r.cases < opts.prediction_hits;
             ++h) {
          if (hits[h].piece != hits[h + 1].piece) continue;
          const std::vector<Label> loop(o.itinerary.begin() + hits[h].hit_index + 1,
                                        o.itinerary.begin() + hits[h + 1].hit_index + 1);
          const LoopMap lm = LoopReturnMap(sys, loop, plane);
          const Vec2 predicted = lm.map.Apply(hits[h].u);
          r.worst = std::max(r.worst, (predicted - hits[h + 1].u).cwiseAbs().maxCoeff());
          ++r.cases;
        }
      }
    }
  }
  if (r.cases < opts.prediction_hits) {
    r.passed = false;
    r.detail = "only " + std::to_string(r.cases) + " same-piece hit pairs found";
  }
  return Finish(r);
}

PropertyResult CheckTimeReversal(const GameSystem& sys, const VerifyOptions& opts) {
  PropertyResult r{"time_reversal", true, 0.0, 1e-8, 0, {}};
  const std::size_t n = std::max<std::size_t>(opts.reversal_transitions, 2);
  std::vector<ReversalResult> whole(opts.reversal_orbits);
  std::vector<double> local(opts.reversal_orbits, 0.0);
  ParallelFor(opts.reversal_orbits, [&](std::size_t i) {
    const Vec6 x0 = RadialProjection(sys, Start(sys, opts.seed ^ (0x500 + i)));
    whole[i] = PreciseReversal(sys, x0, n);
    // Double precision, one flight back from each event.
    const Orbit fwd = IntegrateHamiltonian(sys, x0, n);
    for (std::size_t k = 1; k < n; ++k) {
      const Step st = StepHamiltonian(sys, fwd.events[k].point, fwd.itinerary[k], -1);
      if (st.next != fwd.itinerary[k - 1]) whole[i].itinerary_matches = false;
      local[i] = std::max({local[i], (st.point - fwd.events[k - 1].point).cwiseAbs().maxCoeff(),
                           std::abs(st.dt - fwd.durations[k])});
    }
  });
  double worst_whole = 0.0, worst_local = 0.0;
  for (std::size_t i = 0; i < opts.reversal_orbits; ++i) {
    if (!whole[i].itinerary_matches) {
      r.passed = false;
      r.detail = "backward itinerary differs for orbit " + std::to_string(i);
    }
    worst_whole = std::max({worst_whole, whole[i].point_error, whole[i].duration_error});
    worst_local = std::max(worst_local, local[i]);
    ++r.cases;
  }
  r.worst = std::max(worst_whole, worst_local);
  if (r.detail.empty()) {
    std::ostringstream os;
    os << "whole orbits " << worst_whole << ", per flight (double) " << worst_local
       << " over " << r.cases << " orbits x " << n << " transitions (limit "
       << r.threshold << ")";
    r.detail = os.str();
  }
  return Finish(r);
}

PropertyResult CheckLoopAreaPreservation() {
  PropertyResult r{"loop_area_preservation", true, 0.0, 1e-8, 0, {}};
  const std::vector<std::pair<Mat3, std::vector<Label>>> cases = {
      {reference::Example2(), reference::Example2Loop()},
      {reference::Example3(), reference::Example3Loop()},
      {reference::Example4(), reference::Example4Loop()},
  };
  for (const auto& [a, loop] : cases) {
    const GameSystem sys = GameSystem::Validate(a);
    for (std::size_t k = 0; k < loop.size(); ++k) {
      const Plane plane = *TransitionPlane(loop[k], loop[(k + 1) % loop.size()]);
      const LoopMap lm = LoopReturnMap(sys, loop, plane);
      r.worst = std::max(r.worst, std::abs(lm.map.m.determinant() - 1.0));
      ++r.cases;
    }
  }
  return Finish(r);
}

PropertyResult CheckProjectionIdentity(const VerifyOptions& opts) {
  PropertyResult r{"projection_identity", true, 0.0, 1e-10, 0, {}};
  std::mt19937_64 rng(opts.seed ^ 0x600);
  std::uniform_int_distribution<int> entry(-99, 99);
  std::size_t tries = 0;
  while (r.cases < opts.projection_games && tries < 1000 * opts.projection_games) {
    ++tries;
    Mat3 a;
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = entry(rng);
    std::optional<GameSystem> sys;
    try {
      sys = GameSystem::Validate(a);
    } catch (const Error&) {
      continue;
    }
    const Vec3 wa = ProjectionDirectionA(*sys), wb = ProjectionDirectionB(*sys);
    for (int k = 0; k < 3; ++k) {
      const Vec3 ek = Vec3::Unit(k);
      // P_A x = x - (1'x) w_A projects along w_A onto the tangent space.
      const Vec3 pa = ek - ek.sum() * wa, pb = ek - ek.sum() * wb;
      r.worst = std::max(r.worst, (pa - (ek - sys->nash().ea)).cwiseAbs().maxCoeff());
      r.worst = std::max(r.worst, (pb - (ek - sys->nash().eb)).cwiseAbs().maxCoeff());
    }
    ++r.cases;
  }
  return Finish(r);
}

std::vector<PropertyResult> RunPropertySuite(const GameSystem& sys,
                                             const VerifyOptions& opts) {
  std::vector<PropertyResult> out;
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const Error& e) {
      out.push_back({name, false, 0.0, 0.0, 0, e.what()});
    }
  };
  guarded("hamiltonian_conservation", [&] { return CheckHamiltonianConservation(sys, opts); });
  guarded("lyapunov_decay", [&] { return CheckLyapunovDecay(sys, opts); });
  guarded("br_hamiltonian_conjugacy", [&] { return CheckConjugacy(sys, opts); });
  guarded("loop_area_preservation", [&] { return CheckLoopAreaPreservation(); });
  guarded("return_map_prediction", [&] { return CheckReturnMapPrediction(sys, opts); });
  guarded("time_reversal", [&] { return CheckTimeReversal(sys, opts); });
  guarded("projection_identity", [&] { return CheckProjectionIdentity(opts); });
  return out;
}

}  // namespace brlab
