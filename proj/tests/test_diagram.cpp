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

#include <map>
#include <random>
#include <set>

#include "core/diagram.hpp"
#include "core/dynamics.hpp"
#include "core/ensemble.hpp"
#include "core/game.hpp"
#include "core/reference.hpp"

using namespace brlab;

namespace {

// Counts 2x2 subgrids whose four arrows run around the square, straight
// from the arrow predicate.
int BruteForceShortLoops(const TransitionDiagram& d) {
  int n = 0;
  for (int r1 = 0; r1 < 3; ++r1)
    for (int r2 = r1 + 1; r2 < 3; ++r2)
      for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = c1 + 1; c2 < 3; ++c2) {
          const Label a{r1, c1}, b{r1, c2}, c{r2, c2}, e{r2, c1};
          const bool cw = d.Arrow(a, b) && d.Arrow(b, c) && d.Arrow(c, e) && d.Arrow(e, a);
          const bool ccw = d.Arrow(a, e) && d.Arrow(e, c) && d.Arrow(c, b) && d.Arrow(b, a);
          n += cw || ccw;
        }
  return n;
}

Mat3 RandomIntegerMatrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(-99, 99);
  Mat3 a;
  for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = u(rng);
  return a;
}

}  // namespace

TEST_SUITE("diagram") {

TEST_CASE("every adjacent pair carries exactly one arrow") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const TransitionDiagram d(static_cast<uint32_t>(rng()));
    for (int r = 0; r < 3; ++r)
      for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = c1 + 1; c2 < 3; ++c2) {
          CHECK(d.Arrow({r, c1}, {r, c2}) != d.Arrow({r, c2}, {r, c1}));
          CHECK(d.Arrow({c1, r}, {c2, r}) != d.Arrow({c2, r}, {c1, r}));
        }
  }
}

TEST_CASE("simulated transitions follow the diagram arrows") {
  // Independent of the diagram construction: record which region changes
  // actual orbits make.
  for (const Mat3& a : {reference::Example1(), reference::Example2(), reference::Example3(),
                        reference::Example4()}) {
    const GameSystem sys = GameSystem::Validate(a);
    const TransitionDiagram d = TransitionDiagram::FromGame(sys);
    std::mt19937_64 rng(11);
    std::set<std::pair<int, int>> seen;
    for (int k = 0; k < 50; ++k) {
      const Vec6 x = RadialProjection(sys, RandomRegionPoint(sys, rng));
      const Orbit o = IntegrateHamiltonian(sys, x, 300);
      for (std::size_t i = 0; i + 1 < o.itinerary.size(); ++i) {
        seen.insert({LabelIndex(o.itinerary[i]), LabelIndex(o.itinerary[i + 1])});
      }
    }
    CHECK(!seen.empty());
    for (auto [from, to] : seen) {
      CHECK(d.Arrow(LabelFromIndex(from), LabelFromIndex(to)));
    }
  }
}

TEST_CASE("example 2 has six short loops and satisfies every condition") {
  const GameSystem sys = GameSystem::Validate(reference::Example2());
  const TransitionDiagram d = TransitionDiagram::FromGame(sys);
  const ConditionReport r = CheckConditions(d);
  CHECK(r.Admissible());
  CHECK(ShortLoops(d).size() == 6);
  CHECK(BruteForceShortLoops(d) == 6);
}

TEST_CASE("short loop count agrees with brute force") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 2000; ++t) {
    const TransitionDiagram d(static_cast<uint32_t>(rng()));
    CHECK(CountShortLoops(d) == BruteForceShortLoops(d));
    CHECK(static_cast<int>(ShortLoops(d).size()) == BruteForceShortLoops(d));
  }
}

TEST_CASE("fast admissibility test agrees with the full report") {
  std::mt19937_64 rng(19);
  int admissible = 0;
  for (int t = 0; t < 20000; ++t) {
    const TransitionDiagram d(static_cast<uint32_t>(rng()));
    const ConditionReport r = CheckConditions(d);
    CHECK(IsAdmissible(d) == r.Admissible());
    CHECK(HasAlternatingCycle(d) == !r.Condition5());
    for (const auto& w : r.alternating_cycles) CHECK(IsAlternatingWitness(d, w));
    admissible += r.Admissible();
  }
  CHECK(admissible > 0);
}

TEST_CASE("canonical form is invariant under relabelling") {
  std::mt19937_64 rng(23);
  const auto& transforms = AllTransforms();
  for (int t = 0; t < 300; ++t) {
    const TransitionDiagram d(static_cast<uint32_t>(rng()));
    const uint32_t c = CanonicalForm(d);
    const auto& g = transforms[rng() % transforms.size()];
    const TransitionDiagram e = Transform(d, g);
    CHECK(CanonicalForm(e) == c);
    CHECK(CountShortLoops(e) == CountShortLoops(d));
    CHECK(IsAdmissible(e) == IsAdmissible(d));
  }
}

TEST_CASE("transforms move arrows with the cells") {
  std::mt19937_64 rng(29);
  for (const auto& g : AllTransforms()) {
    const TransitionDiagram d(static_cast<uint32_t>(rng()));
    const TransitionDiagram e = Transform(d, g);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        const Label a = LabelFromIndex(i), b = LabelFromIndex(j);
        if (i == j || (a.row != b.row && a.col != b.col)) continue;
        CHECK(e.Arrow(g.Apply(a), g.Apply(b)) == d.Arrow(a, b));
      }
  }
}

TEST_CASE("enumeration gives 23 classes split 2/15/5/1") {
  const ClassAtlas& atlas = SharedAtlas();
  REQUIRE(atlas.classes.size() == 23);
  std::map<int, int> by_loops;
  uint64_t raw = 0;
  for (const auto& c : atlas.classes) {
    ++by_loops[c.short_loops];
    raw += c.raw_count;
  }
  CHECK(by_loops == std::map<int, int>{{3, 2}, {4, 15}, {5, 5}, {6, 1}});
  CHECK(raw == atlas.raw_admissible);
  CHECK(atlas.raw_admissible == 1596);
  // Condition 1 is not implied by the others.
  CHECK(atlas.cond1_only_failures > 0);
}

TEST_CASE("random zero-sum games satisfy the conditions") {
  std::mt19937_64 rng(31);
  int valid = 0;
  while (valid < 300) {
    try {
      const GameSystem sys = GameSystem::Validate(RandomIntegerMatrix(rng));
      const TransitionDiagram d = TransitionDiagram::FromGame(sys);
      CHECK(CheckConditions(d).Admissible());
      CHECK(SharedAtlas().ClassOf(d) >= 1);
      ++valid;
    } catch (const Error&) {
    }
  }
}

TEST_CASE("realizations land in their class") {
  const ClassAtlas& atlas = SharedAtlas();
  for (int id : {1, 7, 23}) {
    const Mat3 a = FindRealization(atlas, id, 99);
    const GameSystem sys = GameSystem::Validate(a);
    CHECK(atlas.ClassOf(TransitionDiagram::FromGame(sys)) == id);
  }
}

}  // TEST_SUITE
