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
#include <map>
#include <numbers>

#include "core/dynamics.hpp"
#include "core/geometry.hpp"
#include "core/reference.hpp"
#include "core/return_map.hpp"
#include "core/sections.hpp"

using namespace brlab;

namespace {

AffineMap2D Rotation(double angle, Vec2 center) {
  Mat2 r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return {r, center - r * center};
}

// Counts crossings of each plane during one period of a periodic orbit.
std::map<Plane, int> HitsPerPeriod(const Orbit& o, std::size_t period) {
  std::map<Plane, int> out;
  for (std::size_t k = 0; k < period; ++k) ++out[o.events[k].plane];
  return out;
}

}  // namespace

TEST_SUITE("return_map") {

TEST_CASE("classification of synthetic maps") {
  const Vec2 c(0.3, -0.2);
  const auto p5 = ClassifyReturnMap(Rotation(2 * std::numbers::pi / 5, c));
  CHECK(p5.kind == ReturnKind::kPeriodic);
  CHECK(p5.order == 5);
  REQUIRE(p5.fixed_point);
  CHECK((*p5.fixed_point - c).norm() < 1e-12);

  const auto irr = ClassifyReturnMap(Rotation(1.0, c));
  CHECK(irr.kind == ReturnKind::kElliptic);
  CHECK(irr.angle == doctest::Approx(1.0));
  CHECK(irr.det == doctest::Approx(1.0));

  const auto id = ClassifyReturnMap(AffineMap2D{});
  CHECK(id.kind == ReturnKind::kPeriodic);
  CHECK(id.order == 1);

  Mat2 hyp;
  hyp << 2, 1, 1, 1;
  const auto h = ClassifyReturnMap(AffineMap2D{hyp, Vec2(1, 0)});
  CHECK(h.kind == ReturnKind::kNonElliptic);

  // A sheared elliptic map keeps its invariant form.
  Mat2 s;
  s << 1, 0.7, 0, 1;
  const Mat2 conj = s * Rotation(0.8, Vec2::Zero()).m * s.inverse();
  const auto e = ClassifyReturnMap(AffineMap2D{conj, Vec2::Zero()});
  CHECK(e.kind == ReturnKind::kElliptic);
  CHECK((conj.transpose() * e.form * conj - e.form).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(e.form.determinant() == doctest::Approx(1.0));
}

TEST_CASE("rational approximation") {
  const auto r = RationalApproximation(3.0 / 7.0);
  REQUIRE(r);
  CHECK(r->first == 3);
  CHECK(r->second == 7);
  CHECK(!RationalApproximation(1.0 / std::numbers::pi));
}

TEST_CASE("example 2 loop map is elliptic with a periodic fixed point") {
  const GameSystem sys = GameSystem::Validate(reference::Example2());
  const auto loop = reference::Example2Loop();
  const LoopMap lm = LoopReturnMap(sys, loop, MakePlane(Side::kB, 0, 1));
  const auto cls = ClassifyReturnMap(lm.map);
  CHECK(cls.kind == ReturnKind::kElliptic);
  CHECK(std::abs(cls.det - 1.0) < 1e-8);
  REQUIRE(cls.fixed_point);
  const Vec6 x = lm.chart.ToAmbient(*cls.fixed_point);
  const Orbit o = IntegrateHamiltonianFrom(sys, x, lm.loop[0], 6 * 50);
  for (std::size_t k = 0; k < o.itinerary.size(); ++k) {
    CHECK(o.itinerary[k] == lm.loop[k % 6]);
  }
  CHECK((o.events[5].point - x).cwiseAbs().maxCoeff() < 1e-12);

  const ItineraryDomain dom = ComputeItineraryDomain(sys, lm, cls);
  CHECK(!dom.empty);
  CHECK(dom.is_ellipse);
  CHECK(dom.level > 0.0);
}

TEST_CASE("loop map predicts simulated returns inside the domain") {
  const GameSystem sys = GameSystem::Validate(reference::Example2());
  const LoopMap lm = LoopReturnMap(sys, reference::Example2Loop(), MakePlane(Side::kB, 0, 1));
  const auto cls = ClassifyReturnMap(lm.map);
  const ItineraryDomain dom = ComputeItineraryDomain(sys, lm, cls);
  REQUIRE(dom.is_ellipse);
  // A point halfway to the ellipse boundary along the first principal axis.
  Eigen::SelfAdjointEigenSolver<Mat2> es(dom.form);
  const Vec2 axis = es.eigenvectors().col(0) / std::sqrt(es.eigenvalues()(0));
  Vec2 u = dom.center + 0.5 * std::sqrt(dom.level) * axis;
  const Orbit o = IntegrateHamiltonianFrom(sys, lm.chart.ToAmbient(u), lm.loop[0], 6 * 40);
  for (int period = 1; period <= 40; ++period) {
    u = lm.map.Apply(u);
    const Vec6 hit = o.events[6 * period - 1].point;
    CHECK((lm.chart.ToChart(hit) - u).cwiseAbs().maxCoeff() < 1e-9);
    // The invariant form is preserved.
    const Vec2 du = u - dom.center;
    CHECK(du.dot(dom.form * du) == doctest::Approx(0.25 * dom.level).epsilon(1e-8));
  }
  for (std::size_t k = 0; k < o.itinerary.size(); ++k) {
    CHECK(o.itinerary[k] == lm.loop[k % 6]);
  }
}

TEST_CASE("non-closed and illegal loops are rejected") {
  const GameSystem sys = GameSystem::Validate(reference::Example2());
  try {
    LoopReturnMap(sys, reference::Labels({11, 22, 33}), MakePlane(Side::kB, 0, 1));
    FAIL("diagonal step accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIllegalLoop);
  }
}

TEST_CASE("example 3 torus crosses S12 once and S23, S31 three times") {
  const GameSystem sys = GameSystem::Validate(reference::Example3());
  const auto loop = reference::Example3Loop();
  CHECK(loop.size() == 13);
  const LoopMap lm = LoopReturnMap(sys, loop, MakePlane(Side::kA, 0, 1));
  const auto cls = ClassifyReturnMap(lm.map);
  CHECK(cls.kind == ReturnKind::kElliptic);
  REQUIRE(cls.fixed_point);
  const Orbit o =
      IntegrateHamiltonianFrom(sys, lm.chart.ToAmbient(*cls.fixed_point), lm.loop[0], 13 * 10);
  for (std::size_t k = 0; k < o.itinerary.size(); ++k) {
    CHECK(o.itinerary[k] == lm.loop[k % 13]);
  }
  auto hits = HitsPerPeriod(o, 13);
  CHECK(hits[MakePlane(Side::kA, 0, 1)] == 1);
  CHECK(hits[MakePlane(Side::kA, 1, 2)] == 3);
  CHECK(hits[MakePlane(Side::kA, 0, 2)] == 3);
}

}  // TEST_SUITE
