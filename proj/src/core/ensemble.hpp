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

#ifndef BRLAB_CORE_ENSEMBLE_HPP_
#define BRLAB_CORE_ENSEMBLE_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "core/dynamics.hpp"
#include "core/game.hpp"

namespace brlab {

// Uniform point of the simplex product that lies in the interior of a
// region (rejection on the tie band).
Vec6 RandomRegionPoint(const GameSystem& sys, std::mt19937_64& rng);

struct EnsembleOptions {
  FlowMode mode = FlowMode::kHamiltonian;
  std::size_t orbits = 1;
  std::size_t transitions = 1000;
  uint64_t seed = 0;
  // Fixed start for every orbit; random starts when empty.
  std::optional<Vec6> initial;
  int max_resamples = 100;
};

struct EnsembleResult {
  std::vector<Orbit> orbits;      // ordered by index
  std::vector<uint64_t> seeds;    // seed ^ index
  std::size_t resamples = 0;      // starts redrawn after a degenerate crossing
};

// Orbit i draws its start from mt19937_64(seed ^ i). Hamiltonian starts are
// projected radially onto H = 1. Runs in parallel; output is independent of
// the thread count.
EnsembleResult SimulateEnsemble(const GameSystem& sys, const EnsembleOptions& opts);

}  // namespace brlab

#endif  // BRLAB_CORE_ENSEMBLE_HPP_
