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

// Event-driven integration of best-response dynamics and of the induced
// piecewise-translation Hamiltonian flow on H = 1.
//
// Both integrators work in displacement coordinates d = x - E, where E is the
// equilibrium. Every indifference plane passes through E, so each switching
// condition is a linear form in d that can be solved in closed form, and
// relative precision is kept when the best-response orbit approaches E.

#ifndef BRLAB_CORE_DYNAMICS_HPP_
#define BRLAB_CORE_DYNAMICS_HPP_

#include <cstddef>
#include <vector>

#include "core/common.hpp"
#include "core/game.hpp"

namespace brlab {

enum class FlowMode { kHamiltonian, kBestResponse };

const char* FlowModeName(FlowMode mode);

struct OrbitEvent {
  double time = 0.0;  // accumulated flow time at the event
  Plane plane;        // plane crossed
  Label region;       // region entered
  Vec6 point;         // (p; q) on the plane
};

struct Orbit {
  FlowMode mode = FlowMode::kHamiltonian;
  int direction = 1;  // -1 for a time-reversed Hamiltonian orbit
  Vec6 initial;
  double initial_level = 1.0;  // H at the initial point
  std::vector<OrbitEvent> events;
  // itinerary[0] is the starting region, itinerary[k + 1] the region entered
  // at events[k]. durations[k] is the time spent in itinerary[k].
  std::vector<Label> itinerary;
  std::vector<double> durations;
  int renormalizations = 0;
  double max_drift = 0.0;  // largest |H - 1| observed before renormalizing
};

// Velocity of the Hamiltonian flow in region (k, l): (e_k - E^A, e_l - E^B).
Vec6 HamiltonianVelocity(const GameSystem& sys, Label region);

// Linear form a with a.d >= 0 inside `region` and a.d = 0 on `plane`; the
// plane must bound the region.
Vec6 PlaneForm(const GameSystem& sys, Label region, Plane plane);

// Region on the other side of `plane` from `region`.
Label AcrossPlane(Label region, Plane plane);

struct Step {
  Plane plane;
  Label next;
  Vec6 point;
  double dt = 0.0;
};

// One straight flight inside `region` to the first plane hit. Throws
// kNoCrossing or kDegenerateCrossing.
Step StepHamiltonian(const GameSystem& sys, const Vec6& x, Label region,
                     int direction = 1);

// x0 must satisfy |H - 1| <= 1e-9 and lie off every indifference plane.
Orbit IntegrateHamiltonian(const GameSystem& sys, const Vec6& x0,
                           std::size_t transitions);

// Variant with the starting region given explicitly, for points that lie on
// a plane (section points, event points). direction = -1 reverses time.
Orbit IntegrateHamiltonianFrom(const GameSystem& sys, const Vec6& x0,
                               Label region, std::size_t transitions,
                               int direction = 1);

// Best-response flow from (p0, q0) in the simplex; time is BR time s.
Orbit IntegrateBestResponse(const GameSystem& sys, const Vec6& x0,
                            std::size_t transitions);

struct AffineMap6 {
  Mat6 linear = Mat6::Identity();
  Vec6 offset = Vec6::Zero();

  Vec6 Apply(const Vec6& x) const { return linear * x + offset; }
  // this, then `next`.
  AffineMap6 Then(const AffineMap6& next) const {
    return {next.linear * linear, next.linear * offset + next.offset};
  }
};

// Flight through `region` from the entry plane to the exit plane, in ambient
// absolute coordinates: x -> x + t(x) v, t(x) affine. Throws kParallelFlow.
AffineMap6 SegmentAffineMap(const GameSystem& sys, Label region, Plane entry,
                            Plane exit);

// Flight time from x to `exit` inside `region` (may be negative).
double SegmentTime(const GameSystem& sys, Label region, Plane exit,
                   const Vec6& x);

}  // namespace brlab

#endif  // BRLAB_CORE_DYNAMICS_HPP_
