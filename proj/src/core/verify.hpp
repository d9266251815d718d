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

// Property suite: numerical invariants of the dynamics checked on seeded
// random inputs. Shared by `brlab verify` and the acceptance tests.

#ifndef BRLAB_CORE_VERIFY_HPP_
#define BRLAB_CORE_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "core/game.hpp"

namespace brlab {

struct PropertyResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed error
  double threshold = 0.0;  // pass iff worst < threshold
  std::size_t cases = 0;
  std::string detail;
};

struct VerifyOptions {
  uint64_t seed = 1;
  std::size_t conservation_orbits = 10;
  std::size_t conservation_transitions = 10000;
  std::size_t lyapunov_orbits = 20;
  std::size_t lyapunov_transitions = 1000;
  std::size_t conjugacy_orbits = 100;
  std::size_t conjugacy_transitions = 1000;
  std::size_t prediction_hits = 100;
  std::size_t reversal_orbits = 20;
  std::size_t reversal_transitions = 1000;
  std::size_t projection_games = 1000;
};

// Runs every property on `sys` (the conservation, Lyapunov, conjugacy,
// prediction and reversal checks) plus the game-independent ones: loop-map
// area preservation on the reference loops and the projection identity on
// random games.
std::vector<PropertyResult> RunPropertySuite(const GameSystem& sys,
                                             const VerifyOptions& opts = {});

PropertyResult CheckHamiltonianConservation(const GameSystem& sys, const VerifyOptions& opts);
PropertyResult CheckLyapunovDecay(const GameSystem& sys, const VerifyOptions& opts);
PropertyResult CheckConjugacy(const GameSystem& sys, const VerifyOptions& opts);
PropertyResult CheckReturnMapPrediction(const GameSystem& sys, const VerifyOptions& opts);
PropertyResult CheckTimeReversal(const GameSystem& sys, const VerifyOptions& opts);
PropertyResult CheckLoopAreaPreservation();
PropertyResult CheckProjectionIdentity(const VerifyOptions& opts);

}  // namespace brlab

#endif  // BRLAB_CORE_VERIFY_HPP_
