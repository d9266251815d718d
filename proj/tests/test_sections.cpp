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
#include "core/geometry.hpp"
#include "core/reference.hpp"
#include "core/sections.hpp"

using namespace brlab;

namespace {

std::vector<Plane> AllPlanes() {
  std::vector<Plane> out;
  for (Side s : {Side::kA, Side::kB})
    for (int lo = 0; lo < 3; ++lo)
      for (int hi = lo + 1; hi < 3; ++hi) out.push_back(MakePlane(s, lo, hi));
  return out;
}

}  // namespace

TEST_SUITE("sections") {

TEST_CASE("chart vertices satisfy the piece equations") {
  for (const Mat3& a : {reference::Example1(), reference::Example2()}) {
    const GameSystem sys = GameSystem::Validate(a);
    for (Plane plane : AllPlanes()) {
      const auto charts = BuildSectionCharts(sys, plane);
      int nonempty = 0;
      for (int piece = 0; piece < 3; ++piece) {
        if (!charts[piece]) continue;
        ++nonempty;
        const SectionChart& c = *charts[piece];
        CHECK(c.piece == piece);
        CHECK(Area(c.polygon) > 0.0);
        CHECK((c.basis.transpose() * c.basis - Mat2::Identity()).cwiseAbs().maxCoeff() <
              1e-12);
        const PieceConstraints pc = DescribePiece(sys, plane, piece);
        for (const Vec2& u : c.polygon) {
          const Vec6 x = c.ToAmbient(u);
          const Vec6 d = x - sys.equilibrium();
          CHECK((pc.eq * d - pc.rhs).cwiseAbs().maxCoeff() < 1e-10);
          for (const auto& [g, h] : pc.ineq) CHECK(g.dot(d) + h > -1e-9);
          CHECK((c.ToChart(x) - u).cwiseAbs().maxCoeff() < 1e-12);
          CHECK(HamiltonianOfDisplacement(sys, x - sys.equilibrium()) ==
                doctest::Approx(1.0).epsilon(1e-10));
        }
      }
      CHECK(nonempty >= 1);
    }
  }
}

TEST_CASE("orbit hits lie on the plane inside their piece") {
  const GameSystem sys = GameSystem::Validate(reference::Example1());
  std::mt19937_64 rng(41);
  const Vec6 x = RadialProjection(sys, RandomRegionPoint(sys, rng));
  const Orbit o = IntegrateHamiltonian(sys, x, 3000);
  std::size_t total = 0;
  for (Plane plane : AllPlanes()) {
    const auto charts = BuildSectionCharts(sys, plane);
    const auto hits = SectionHits(sys, o, plane, charts);
    total += hits.size();
    for (const auto& h : hits) {
      const OrbitEvent& ev = o.events[h.hit_index];
      CHECK(ev.plane == plane);
      CHECK(h.piece == PieceOf(plane, ev.region));
      REQUIRE(charts[h.piece]);
      const SectionChart& c = *charts[h.piece];
      CHECK(Contains(c.polygon, h.u, 1e-9));
      CHECK((c.ToAmbient(h.u) - h.x).cwiseAbs().maxCoeff() < 1e-10);
      const Vec6 a = PlaneForm(sys, ev.region, plane);
      CHECK(std::abs(a.dot(h.x - sys.equilibrium())) < 1e-10);
    }
  }
  // Every event crosses exactly one plane.
  CHECK(total == o.events.size());
}

TEST_CASE("pieces are named by the other player's best response") {
  const Plane a12 = MakePlane(Side::kA, 0, 1);
  const Plane b23 = MakePlane(Side::kB, 1, 2);
  CHECK(PieceOf(a12, {0, 2}) == 2);
  CHECK(PieceOf(b23, {1, 2}) == 1);
}

}  // TEST_SUITE
