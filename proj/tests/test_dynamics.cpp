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

#include <doctest.h>

#include <cmath>
#include <random>

#include "core/dynamics.hpp"
#include "core/ensemble.hpp"
#include "core/game.hpp"
#include "core/reference.hpp"
#include "rational_oracle.hpp"

using namespace brlab;

namespace {

Label NaiveRegion(const GameSystem& sys, const Vec6& x) {
  const auto br = ComputeBestResponses(sys, x.head<3>(), x.tail<3>());
  return {br.a.first(), br.b.first()};
}

Vec6 Vertex(Label r) {
  Vec6 v = Vec6::Zero();
  v(r.row) = 1.0;
  v(3 + r.col) = 1.0;
  return v;
}

// Fixed-step integration of dx/dt = BR(x) - E with the best response
// recomputed from scratch after every step. Returns the points where the
// best response changed, with the regions entered.
struct DenseEvent {
  Vec6 x;
  Label region;
  double time;
};

std::vector<DenseEvent> DenseHamiltonian(const GameSystem& sys, Vec6 x, double dt,
                                         std::size_t events) {
  std::vector<DenseEvent> out;
  Label r = NaiveRegion(sys, x);
  double t = 0.0;
  while (out.size() < events) {
    x += dt * (Vertex(r) - sys.equilibrium());
    t += dt;
    const Label next = NaiveRegion(sys, x);
    if (next != r) {
      out.push_back({x, next, t});
      r = next;
    }
  }
  return out;
}

// Exact exponential relaxation towards the current best-response vertex in
// steps of ds (BR time).
std::vector<DenseEvent> DenseBestResponse(const GameSystem& sys, Vec6 x, double ds,
                                          std::size_t events) {
  std::vector<DenseEvent> out;
  Label r = NaiveRegion(sys, x);
  double s = 0.0;
  const double w = -std::expm1(-ds);
  while (out.size() < events) {
    x += w * (Vertex(r) - x);
    s += ds;
    const Label next = NaiveRegion(sys, x);
    if (next != r) {
      out.push_back({x, next, s});
      r = next;
    }
  }
  return out;
}

Vec6 StartPoint(const GameSystem& sys, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return RandomRegionPoint(sys, rng);
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("hamiltonian events agree with a dense fixed-step integration") {
  for (const Mat3& a : {reference::Example1(), reference::Example2(), reference::Example3()}) {
    const GameSystem sys = GameSystem::Validate(a);
    for (uint64_t seed : {1u, 2u, 3u}) {
      const Vec6 x0 = RadialProjection(sys, StartPoint(sys, seed));
      const Orbit o = IntegrateHamiltonian(sys, x0, 8);
      double shortest = o.durations[0];
      for (double d : o.durations) shortest = std::min(shortest, d);
      const double dt = shortest * 1e-4;
      const auto dense = DenseHamiltonian(sys, x0, dt, 8);
      for (std::size_t k = 0; k < 8; ++k) {
        CHECK(dense[k].region == o.events[k].region);
        const double err = (dense[k].x - o.events[k].point).cwiseAbs().maxCoeff();
        CHECK(err < 20 * dt * (k + 1));
        CHECK(std::abs(dense[k].time - o.events[k].time) < 10 * dt * (k + 1));
      }
    }
  }
}

TEST_CASE("best-response events agree with a dense fixed-step integration") {
  for (const Mat3& a : {reference::Example1(), reference::Example4()}) {
    const GameSystem sys = GameSystem::Validate(a);
    for (uint64_t seed : {4u, 5u}) {
      const Vec6 x0 = StartPoint(sys, seed);
      const Orbit o = IntegrateBestResponse(sys, x0, 6);
      double shortest = o.durations[0];
      for (double d : o.durations) shortest = std::min(shortest, d);
      const double ds = shortest * 1e-4;
      const auto dense = DenseBestResponse(sys, x0, ds, 6);
      for (std::size_t k = 0; k < 6; ++k) {
        CHECK(dense[k].region == o.events[k].region);
        CHECK(std::abs(dense[k].time - o.events[k].time) < 10 * ds * (k + 1));
        CHECK((dense[k].x - o.events[k].point).cwiseAbs().maxCoeff() < 10 * ds * (k + 1));
      }
    }
  }
}

TEST_CASE("hamiltonian events match exact rational arithmetic") {
  using oracle::Q;
  const Mat3 a = reference::Example1();
  const GameSystem sys = GameSystem::Validate(a);
  const auto m = oracle::FromInts(a);
  const auto eb = oracle::IndifferentMix(m);
  const auto ea = oracle::IndifferentMix(oracle::Transposed(m));

  // Exact displacement of a rational start point, scaled onto H = 1.
  std::array<Q, 6> d = {Q(1, 2) - ea[0], Q(1, 3) - ea[1], Q(1, 6) - ea[2],
                        Q(1, 5) - eb[0], Q(1, 5) - eb[1], Q(3, 5) - eb[2]};
  auto mq = [&](const std::array<Q, 6>& x, int i) -> Q {
    return m[i][0] * x[3] + m[i][1] * x[4] + m[i][2] * x[5];
  };
  auto pm = [&](const std::array<Q, 6>& x, int j) -> Q {
    return x[0] * m[0][j] + x[1] * m[1][j] + x[2] * m[2][j];
  };
  auto level = [&](const std::array<Q, 6>& x) -> Q {
    Q hi = mq(x, 0), lo = pm(x, 0);
    for (int i = 1; i < 3; ++i) {
      hi = std::max(hi, mq(x, i));
      lo = std::min(lo, pm(x, i));
    }
    return hi - lo;
  };
  const Q h0 = level(d);
  for (auto& c : d) c /= h0;

  Label r{0, 0};
  for (int i = 1; i < 3; ++i) {
    if (mq(d, i) > mq(d, r.row)) r.row = i;
    if (pm(d, i) < pm(d, r.col)) r.col = i;
  }
  Vec6 x0;
  for (int i = 0; i < 3; ++i) {
    x0(i) = oracle::ToDouble(d[i] + ea[i]);
    x0(3 + i) = oracle::ToDouble(d[3 + i] + eb[i]);
  }
  const std::size_t n = 40;
  const Orbit o = IntegrateHamiltonianFrom(sys, x0, r, n);

  for (std::size_t k = 0; k < n; ++k) {
    std::array<Q, 6> v;
    for (int i = 0; i < 3; ++i) {
      v[i] = Q(i == r.row ? 1 : 0) - ea[i];
      v[3 + i] = Q(i == r.col ? 1 : 0) - eb[i];
    }
    // Earliest time at which another pure strategy ties with the current one.
    bool found = false;
    Q best;
    Label next;
    for (int i = 0; i < 3; ++i) {
      if (i != r.row) {
        const Q gap = mq(d, r.row) - mq(d, i), rate = mq(v, r.row) - mq(v, i);
        if (rate < 0 && (!found || gap / -rate < best)) {
          best = gap / -rate;
          next = {i, r.col};
          found = true;
        }
      }
      if (i != r.col) {
        const Q gap = pm(d, i) - pm(d, r.col), rate = pm(v, i) - pm(v, r.col);
        if (rate < 0 && (!found || gap / -rate < best)) {
          best = gap / -rate;
          next = {r.row, i};
          found = true;
        }
      }
    }
    REQUIRE(found);
    for (int i = 0; i < 6; ++i) d[i] += best * v[i];
    r = next;
    CHECK(o.events[k].region == r);
    CHECK(o.durations[k] == doctest::Approx(oracle::ToDouble(best)).epsilon(1e-9));
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(o.events[k].point(i) - oracle::ToDouble(d[i] + ea[i])) < 1e-11);
      CHECK(std::abs(o.events[k].point(3 + i) - oracle::ToDouble(d[3 + i] + eb[i])) < 1e-11);
    }
    CHECK(level(d) == 1);
  }
}

TEST_CASE("hamiltonian is conserved and BR level decays as exp(-s)") {
  const GameSystem sys = GameSystem::Validate(reference::Example3());
  const Vec6 x = StartPoint(sys, 9);
  const Orbit ham = IntegrateHamiltonian(sys, RadialProjection(sys, x), 5000);
  CHECK(ham.max_drift < 1e-12);
  for (const auto& ev : ham.events) {
    CHECK(std::abs(HamiltonianOfDisplacement(sys, ev.point - sys.equilibrium()) - 1.0) < 1e-9);
  }
  const Orbit br = IntegrateBestResponse(sys, x, 500);
  const double h0 = br.initial_level;
  for (const auto& ev : br.events) {
    const double h = HamiltonianOfDisplacement(sys, ev.point - sys.equilibrium());
    CHECK(h == doctest::Approx(h0 * std::exp(-ev.time)).epsilon(1e-9));
  }
}

TEST_CASE("best-response and hamiltonian orbits share itineraries") {
  const GameSystem sys = GameSystem::Validate(reference::Example1());
  const Vec6 x = StartPoint(sys, 12);
  const Orbit br = IntegrateBestResponse(sys, x, 60);
  const Orbit ham = IntegrateHamiltonian(sys, RadialProjection(sys, x), 60);
  CHECK(br.itinerary == ham.itinerary);
  for (std::size_t k = 0; k < 60; ++k) {
    const Vec6 y = RadialProjection(sys, br.events[k].point);
    CHECK((y - ham.events[k].point).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("reversed flow retraces the forward orbit") {
  const GameSystem sys = GameSystem::Validate(reference::Example4());
  const Vec6 x0 = RadialProjection(sys, StartPoint(sys, 13));
  const std::size_t n = 30;
  const Orbit fwd = IntegrateHamiltonian(sys, x0, n);
  const Orbit bwd =
      IntegrateHamiltonianFrom(sys, fwd.events.back().point, fwd.itinerary[n - 1], n - 1, -1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    CHECK((bwd.events[j].point - fwd.events[n - 2 - j].point).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(bwd.itinerary[j + 1] == fwd.itinerary[n - 2 - j]);
  }
}

TEST_CASE("segment maps reproduce single flights") {
  const GameSystem sys = GameSystem::Validate(reference::Example2());
  const Vec6 x0 = RadialProjection(sys, StartPoint(sys, 14));
  const Orbit o = IntegrateHamiltonian(sys, x0, 20);
  for (std::size_t k = 1; k < 20; ++k) {
    const Label region = o.itinerary[k];
    const AffineMap6 seg =
        SegmentAffineMap(sys, region, o.events[k - 1].plane, o.events[k].plane);
    CHECK((seg.Apply(o.events[k - 1].point) - o.events[k].point).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(SegmentTime(sys, region, o.events[k].plane, o.events[k - 1].point) ==
          doctest::Approx(o.durations[k]).epsilon(1e-12));
  }
}

TEST_CASE("integration errors") {
  const GameSystem sys = GameSystem::Validate(reference::Example1());
  const Vec6 e = sys.equilibrium();
  const Vec6 x = StartPoint(sys, 15);
  try {
    IntegrateHamiltonian(sys, x, 10);  // not on H = 1
    FAIL("off-level start accepted");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kInvalidInput);
  }
  try {
    IntegrateBestResponse(sys, e, 10);
    FAIL("equilibrium start accepted");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kAtEquilibrium);
  }
  // A point in the wrong region is rejected rather than silently moved.
  const Vec6 y = RadialProjection(sys, x);
  const Label r = RegionOf(sys, y.head<3>(), y.tail<3>());
  const Label wrong{(r.row + 1) % 3, r.col};
  try {
    IntegrateHamiltonianFrom(sys, y, wrong, 10);
    FAIL("wrong region accepted");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kNoCrossing);
  }
}

}  // TEST_SUITE
