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

#include "core/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace brlab {

const char* FlowModeName(FlowMode mode) {
  return mode == FlowMode::kHamiltonian ? "ham" : "br";
}

Vec6 HamiltonianVelocity(const GameSystem& sys, Label region) {
  Vec6 v = -sys.equilibrium();
  v(region.row) += 1.0;
  v(3 + region.col) += 1.0;
  return v;
}

Label AcrossPlane(Label region, Plane plane) {
  if (plane.side == Side::kA) {
    return {region.row == plane.lo ? plane.hi : plane.lo, region.col};
  }
  return {region.row, region.col == plane.lo ? plane.hi : plane.lo};
}

Vec6 PlaneForm(const GameSystem& sys, Label region, Plane plane) {
  const Mat3& m = sys.payoff();
  Vec6 a = Vec6::Zero();
  if (plane.side == Side::kA) {
    if (region.row != plane.lo && region.row != plane.hi) {
      throw Error(ErrorCode::kInvalidInput, "plane does not bound region");
    }
    const int other = region.row == plane.lo ? plane.hi : plane.lo;
    // (A d_q)_k - (A d_q)_k'
    a.tail<3>() = (m.row(region.row) - m.row(other)).transpose();
  } else {
    if (region.col != plane.lo && region.col != plane.hi) {
      throw Error(ErrorCode::kInvalidInput, "plane does not bound region");
    }
    const int other = region.col == plane.lo ? plane.hi : plane.lo;
    // (d_p A)_l' - (d_p A)_l
    a.head<3>() = m.col(other) - m.col(region.col);
  }
  return a;
}

namespace {

// Switching candidate in region (k, l): gap(d) = gap >= 0 now; `rate` is the
// gap evaluated at the velocity, so gap(d + t v) = gap + t rate.
struct Candidate {
  Plane plane;
  Label next;
  double gap;
  double rate;
};

std::array<Candidate, 4> Candidates(const GameSystem& sys, const Vec6& d,
                                    Label r) {
  const Mat3& m = sys.payoff();
  const Vec3 aq = m * d.tail<3>();
  const Vec3 pa = m.transpose() * d.head<3>();
  std::array<Candidate, 4> out{};
  int n = 0;
  for (int k2 = 0; k2 < 3; ++k2) {
    if (k2 == r.row) continue;
    out[n++] = {MakePlane(Side::kA, r.row, k2), {k2, r.col},
                aq(r.row) - aq(k2), m(r.row, r.col) - m(k2, r.col)};
  }
  for (int l2 = 0; l2 < 3; ++l2) {
    if (l2 == r.col) continue;
    out[n++] = {MakePlane(Side::kB, r.col, l2), {r.row, l2},
                pa(l2) - pa(r.col), m(r.row, l2) - m(r.row, r.col)};
  }
  return out;
}

[[noreturn]] void ThrowOutside(const GameSystem& sys, const Vec6& d) {
  throw Error(ErrorCode::kNoCrossing, "state is not inside its region",
              Vec6(sys.equilibrium() + d));
}

// Picks the earliest positive root among `times` (infinite = no root).
int Earliest(const GameSystem& sys, const std::array<double, 4>& times,
             const Vec6& d) {
  int best = -1;
  for (int i = 0; i < 4; ++i) {
    if (std::isfinite(times[i]) && (best < 0 || times[i] < times[best])) best = i;
  }
  if (best < 0) {
    throw Error(ErrorCode::kNoCrossing, "no switching plane ahead",
                Vec6(sys.equilibrium() + d));
  }
  const auto& tol = sys.tol();
  if (times[best] < tol.min_step) {
    throw Error(ErrorCode::kDegenerateCrossing,
                "flight time below the minimum step",
                Vec6(sys.equilibrium() + d));
  }
  for (int i = 0; i < 4; ++i) {
    if (i != best && std::isfinite(times[i]) &&
        times[i] - times[best] <= tol.event_slack * times[i]) {
      throw Error(ErrorCode::kDegenerateCrossing,
                  "two planes are hit simultaneously",
                  Vec6(sys.equilibrium() + d));
    }
  }
  return best;
}

struct DisplacementStep {
  Candidate hit;
  Vec6 d;
  double dt;
};

DisplacementStep StepDisplacement(const GameSystem& sys, const Vec6& d,
                                  Label region, int direction) {
  const auto cands = Candidates(sys, d, region);
  const double band = sys.tie_band();
  std::array<double, 4> times{};
  for (int i = 0; i < 4; ++i) {
    const double rate = direction * cands[i].rate;
    if (cands[i].gap < -band) ThrowOutside(sys, d);
    times[i] = rate < 0.0 ? std::max(cands[i].gap, 0.0) / -rate
                          : std::numeric_limits<double>::infinity();
  }
  const int best = Earliest(sys, times, d);
  const Vec6 v = HamiltonianVelocity(sys, region);
  return {cands[best], d + (direction * times[best]) * v, times[best]};
}

void CheckRegion(const GameSystem& sys, const Vec6& d, Label region) {
  for (const auto& c : Candidates(sys, d, region)) {
    if (c.gap < -sys.tie_band()) ThrowOutside(sys, d);
  }
}

}  // namespace

Step StepHamiltonian(const GameSystem& sys, const Vec6& x, Label region,
                     int direction) {
  const Vec6 e = sys.equilibrium();
  const auto s = StepDisplacement(sys, x - e, region, direction);
  return {s.hit.plane, s.hit.next, e + s.d, s.dt};
}

Orbit IntegrateHamiltonianFrom(const GameSystem& sys, const Vec6& x0,
                               Label region, std::size_t transitions,
                               int direction) {
  const Vec6 e = sys.equilibrium();
  Vec6 d = x0 - e;
  const double level = HamiltonianOfDisplacement(sys, d);
  if (std::abs(level - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "initial point has H = " << level << ", expected 1";
    throw Error(ErrorCode::kInvalidInput, os.str(), x0);
  }
  CheckRegion(sys, d, region);

  Orbit orbit;
  orbit.mode = FlowMode::kHamiltonian;
  orbit.direction = direction;
  orbit.initial = x0;
  orbit.initial_level = level;
  orbit.events.reserve(transitions);
  orbit.itinerary.reserve(transitions + 1);
  orbit.durations.reserve(transitions);
  orbit.itinerary.push_back(region);

  const auto& tol = sys.tol();
  double t = 0.0;
  int since_renorm = 0;
  for (std::size_t n = 0; n < transitions; ++n) {
    const auto s = StepDisplacement(sys, d, region, direction);
    d = s.d;
    t += s.dt;
    region = s.hit.next;

    const double h = HamiltonianOfDisplacement(sys, d);
    const double drift = std::abs(h - 1.0);
    orbit.max_drift = std::max(orbit.max_drift, drift);
    if (drift > tol.renorm_drift || ++since_renorm >= tol.renorm_interval) {
      d /= h;
      ++orbit.renormalizations;
      since_renorm = 0;
    }
    orbit.events.push_back({t, s.hit.plane, region, e + d});
    orbit.itinerary.push_back(region);
    orbit.durations.push_back(s.dt);
  }
  return orbit;
}

Orbit IntegrateHamiltonian(const GameSystem& sys, const Vec6& x0,
                           std::size_t transitions) {
  const Label region = RegionOf(sys, x0.head<3>(), x0.tail<3>());
  return IntegrateHamiltonianFrom(sys, x0, region, transitions, 1);
}

Orbit IntegrateBestResponse(const GameSystem& sys, const Vec6& x0,
                            std::size_t transitions) {
  const Vec6 e = sys.equilibrium();
  Vec6 d = x0 - e;
  if (d.cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorCode::kAtEquilibrium, "initial point is the equilibrium");
  }
  Label region = RegionOf(sys, x0.head<3>(), x0.tail<3>());

  Orbit orbit;
  orbit.mode = FlowMode::kBestResponse;
  orbit.initial = x0;
  orbit.initial_level = HamiltonianOfDisplacement(sys, d);
  orbit.events.reserve(transitions);
  orbit.itinerary.reserve(transitions + 1);
  orbit.durations.reserve(transitions);
  orbit.itinerary.push_back(region);

  const double band = sys.tie_band();
  double s = 0.0;
  for (std::size_t n = 0; n < transitions; ++n) {
    // Within (k, l): d(s) = u d + (1 - u) v with u = exp(-s). A gap g with
    // velocity gap c < 0 closes at w = 1 - u = g / (g - c).
    const auto cands = Candidates(sys, d, region);
    const double level = HamiltonianOfDisplacement(sys, d);
    std::array<double, 4> ws{};
    for (int i = 0; i < 4; ++i) {
      if (cands[i].gap < -band * level) ThrowOutside(sys, d);
      const double g = std::max(cands[i].gap, 0.0);
      ws[i] = cands[i].rate < 0.0 ? g / (g - cands[i].rate)
                                  : std::numeric_limits<double>::infinity();
    }
    const int best = Earliest(sys, ws, d);
    const double w = ws[best];
    const Vec6 v = HamiltonianVelocity(sys, region);
    d = (1.0 - w) * d + w * v;
    const double ds = -std::log1p(-w);
    s += ds;
    region = cands[best].next;
    if (HamiltonianOfDisplacement(sys, d) < 1e-14) {
      throw Error(ErrorCode::kConvergedToEquilibrium,
                  "orbit reached the equilibrium to machine precision",
                  Vec6(e + d));
    }
    orbit.events.push_back({s, cands[best].plane, region, e + d});
    orbit.itinerary.push_back(region);
    orbit.durations.push_back(ds);
  }
  return orbit;
}

AffineMap6 SegmentAffineMap(const GameSystem& sys, Label region, Plane entry,
                            Plane exit) {
  // Validates that both planes bound the region.
  (void)PlaneForm(sys, region, entry);
  const Vec6 a = PlaneForm(sys, region, exit);
  const Vec6 v = HamiltonianVelocity(sys, region);
  const double av = a.dot(v);
  if (std::abs(av) <= 1e-12 * sys.scale()) {
    throw Error(ErrorCode::kParallelFlow, "flow is parallel to the exit plane");
  }
  // In displacement: d -> d - (a.d / a.v) v.
  AffineMap6 map;
  map.linear = Mat6::Identity() - v * a.transpose() / av;
  const Vec6 e = sys.equilibrium();
  map.offset = e - map.linear * e;
  return map;
}

double SegmentTime(const GameSystem& sys, Label region, Plane exit,
                   const Vec6& x) {
  const Vec6 a = PlaneForm(sys, region, exit);
  const Vec6 v = HamiltonianVelocity(sys, region);
  return -a.dot(x - sys.equilibrium()) / a.dot(v);
}

}  // namespace brlab
