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

// Multiprecision reference integrators used by the property suite.
//
// Orbits of the flow are chaotic for most games: a rounding error of 1e-16
// grows by a roughly constant factor per transition, so two double-precision
// integrations of the same orbit separate after one or two hundred switches.
// Comparing BR and Hamiltonian orbits, or a forward and a backward pass, over
// a thousand transitions therefore needs more than a hundred digits. These
// routines redo the computation in binary floating point with `kDigits`
// decimal digits, starting from the (exact) double inputs, and only round the
// results back to double at the end.

#ifndef BRLAB_CORE_PRECISE_HPP_
#define BRLAB_CORE_PRECISE_HPP_

#include <cstddef>
#include <vector>

#include "core/common.hpp"
#include "core/game.hpp"

namespace brlab {

inline constexpr unsigned kPreciseDigits = 200;

struct PreciseOrbit {
  // Same layout as Orbit: itinerary has one more entry than points.
  std::vector<Label> itinerary;
  std::vector<Vec6> points;  // event points, rounded to double
  std::vector<double> durations;
};

// BR orbit from x0 (in the simplex). Event points are projected radially onto
// H = 1 before rounding; durations are in BR time.
PreciseOrbit PreciseBestResponse(const GameSystem& sys, const Vec6& x0,
                                 std::size_t transitions);

// Hamiltonian orbit from the radial projection of x0 onto H = 1.
PreciseOrbit PreciseHamiltonian(const GameSystem& sys, const Vec6& x0,
                                std::size_t transitions);

struct ConjugacyResult {
  bool itinerary_matches = false;
  double point_error = 0.0;  // max over events, taken before rounding
};

// Runs both flows from x0 and compares the radially projected BR events with
// the Hamiltonian events.
ConjugacyResult PreciseConjugacy(const GameSystem& sys, const Vec6& x0,
                                 std::size_t transitions);

struct ReversalResult {
  bool itinerary_matches = false;
  double point_error = 0.0;     // max over events and the start point
  double duration_error = 0.0;  // max |forward - backward| flight time
};

// Integrates the Hamiltonian flow forward from the projection of x0, then
// backward from the last event, and compares the two passes.
ReversalResult PreciseReversal(const GameSystem& sys, const Vec6& x0,
                               std::size_t transitions);

}  // namespace brlab

#endif  // BRLAB_CORE_PRECISE_HPP_
