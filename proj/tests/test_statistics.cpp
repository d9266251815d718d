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

#include "core/reference.hpp"
#include "core/statistics.hpp"

using namespace brlab;

namespace {

// Best-response orbit with prescribed itinerary and BR-time durations.
Orbit SyntheticOrbit(const std::vector<Label>& regions, const std::vector<double>& ds) {
  Orbit o;
  o.mode = FlowMode::kBestResponse;
  o.itinerary = regions;
  double s = 0.0;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    s += ds[k];
    o.durations.push_back(ds[k]);
    o.events.push_back({s, {Side::kA, 0, 1}, regions[k + 1], Vec6::Zero()});
  }
  return o;
}

}  // namespace

TEST_SUITE("statistics") {

TEST_CASE("visit frequencies count labels") {
  const auto it = reference::Labels({11, 12, 11, 33});
  const Mat3 q = VisitFrequencies(it);
  CHECK(q(0, 0) == doctest::Approx(0.5));
  CHECK(q(0, 1) == doctest::Approx(0.25));
  CHECK(q(2, 2) == doctest::Approx(0.25));
  CHECK(q.sum() == doctest::Approx(1.0));
  CHECK(VisitFrequencies(it, 2)(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("time fractions in BR and FP time") {
  const auto regions = reference::Labels({11, 12, 22, 21});
  const Orbit o = SyntheticOrbit(regions, {1.0, 2.0, 0.5});
  const Mat3 br = TimeFractions(o, TimeParam::kBestResponse);
  CHECK(br(0, 0) == doctest::Approx(1.0 / 3.5));
  CHECK(br(0, 1) == doctest::Approx(2.0 / 3.5));
  CHECK(br(1, 1) == doctest::Approx(0.5 / 3.5));
  // FP time t = exp(s): segment lengths e^1 - 1, e^3 - e, e^3.5 - e^3.
  const double a = std::exp(1.0) - 1.0, b = std::exp(3.0) - std::exp(1.0),
               c = std::exp(3.5) - std::exp(3.0);
  const Mat3 fp = TimeFractions(o, TimeParam::kFictitiousPlay);
  CHECK(fp(0, 0) == doctest::Approx(a / (a + b + c)));
  CHECK(fp(0, 1) == doctest::Approx(b / (a + b + c)));
  CHECK(fp(1, 1) == doctest::Approx(c / (a + b + c)));
  CHECK(fp(1, 0) == 0.0);

  Orbit ham = o;
  ham.mode = FlowMode::kHamiltonian;
  CHECK_THROWS_AS(TimeFractions(ham, TimeParam::kBestResponse), Error);
  CHECK(OwnTimeFractions(ham)(0, 1) == doctest::Approx(2.0 / 3.5));
}

TEST_CASE("transition frequencies are row-normalized counts") {
  const auto it = reference::Labels({11, 12, 11, 13, 11, 12});
  const TransitionTable t = TransitionFrequencies(it);
  const int a = LabelIndex({0, 0}), b = LabelIndex({0, 1}), c = LabelIndex({0, 2});
  CHECK(t(a, b) == doctest::Approx(2.0 / 3.0));
  CHECK(t(a, c) == doctest::Approx(1.0 / 3.0));
  CHECK(t(b, a) == doctest::Approx(1.0));
  CHECK(t.row(LabelIndex({2, 2})).sum() == 0.0);
}

TEST_CASE("constant pattern gives a flat trace") {
  std::vector<Label> regions;
  std::vector<double> ds;
  const auto cycle = reference::Labels({11, 12, 22});
  for (int k = 0; k < 300; ++k) regions.push_back(cycle[k % 3]);
  for (int k = 0; k + 1 < 300; ++k) ds.push_back(1.0);
  Orbit o = SyntheticOrbit(regions, ds);
  o.mode = FlowMode::kHamiltonian;
  const auto trace = ConvergenceTrace(o);
  REQUIRE(trace.size() > 3);
  for (const auto& tp : trace) {
    if (tp.n < 30) continue;
    CHECK(std::abs(tp.q(0, 0) - 1.0 / 3.0) < 0.02);
    CHECK(std::abs(tp.p(1, 1) - 1.0 / 3.0) < 0.02);
  }
}

TEST_CASE("log-spaced counts are increasing and end at n") {
  const auto c = LogSpacedCounts(10000);
  REQUIRE(!c.empty());
  CHECK(c.back() == 10000);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);
}

TEST_CASE("periodic itineraries are detected") {
  std::vector<Label> it = reference::Labels({33, 31});
  const auto cycle = reference::Labels({11, 12, 22, 23, 33, 31});
  for (int k = 0; k < 40; ++k) it.push_back(cycle[k % 6]);
  const auto per = DetectPeriodicItinerary(it, 20);
  REQUIRE(per.has_value());
  CHECK(per->period == 6);
  CHECK(DetectPeriodicItinerary(reference::Labels({11, 12, 13, 21, 22, 23, 31}), 3) ==
        std::nullopt);
}

TEST_CASE("block decomposition is read up to rotation") {
  const auto a = reference::Example4BlockA();
  const auto b = reference::Example4BlockB();
  CHECK(a.size() == 7);
  CHECK(b.size() == 8);
  std::vector<Label> cycle;
  for (char c : std::string("babbabaa")) {
    const auto& blk = c == 'a' ? a : b;
    cycle.insert(cycle.end(), blk.begin(), blk.end());
  }
  CHECK(cycle.size() == 60);
  const std::vector<NamedBlock> blocks{{'a', a}, {'b', b}};
  CHECK(DecomposeBlocks(cycle, blocks) == "aababbab");
  // Rotating the cycle by a few labels does not change the word.
  std::rotate(cycle.begin(), cycle.begin() + 3, cycle.end());
  CHECK(DecomposeBlocks(cycle, blocks) == "aababbab");
  CHECK(LeastRotation("babbabaa") == "aababbab");
  CHECK(DecomposeBlocks(reference::Labels({11, 12, 22}), blocks).empty());
}

TEST_CASE("accumulator merge equals sequential accumulation") {
  const auto regions = reference::Labels({11, 12, 22, 21, 11});
  const Orbit o1 = SyntheticOrbit(regions, {1.0, 2.0, 0.5, 0.25});
  const Orbit o2 = SyntheticOrbit(reference::Labels({33, 31, 11}), {0.5, 0.5});
  StatsAccumulator all, a, b;
  all.Add(o1);
  all.Add(o2);
  a.Add(o1);
  b.Add(o2);
  a.Merge(b);
  CHECK(a.orbits == 2);
  CHECK((a.MeanP() - all.MeanP()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((a.MeanQ() - all.MeanQ()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((a.Transitions() - all.Transitions()).cwiseAbs().maxCoeff() < 1e-15);
}

}  // TEST_SUITE
