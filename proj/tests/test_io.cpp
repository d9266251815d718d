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

#include <cstdlib>
#include <string>

#include "core/ensemble.hpp"
#include "core/io.hpp"
#include "core/reference.hpp"

using namespace brlab;

namespace {

bool SameOrbit(const Orbit& a, const Orbit& b) {
  if (a.mode != b.mode || a.direction != b.direction || a.itinerary != b.itinerary ||
      a.durations != b.durations || a.events.size() != b.events.size() ||
      a.initial != b.initial) {
    return false;
  }
  for (std::size_t k = 0; k < a.events.size(); ++k) {
    const auto &x = a.events[k], &y = b.events[k];
    if (x.time != y.time || x.plane != y.plane || x.region != y.region || x.point != y.point)
      return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("orbit JSONL round-trips exactly") {
  const GameSystem sys = GameSystem::Validate(reference::Example1());
  for (FlowMode mode : {FlowMode::kHamiltonian, FlowMode::kBestResponse}) {
    EnsembleOptions opts;
    opts.mode = mode;
    opts.orbits = 3;
    opts.transitions = 500;
    opts.seed = 77;
    const auto ens = SimulateEnsemble(sys, opts);
    std::string text;
    for (std::size_t i = 0; i < ens.orbits.size(); ++i) {
      text += OrbitToJsonl(sys, ens.orbits[i], ens.seeds[i], i);
    }
    const auto records = ParseOrbitJsonl(text);
    REQUIRE(records.size() == 3);
    std::vector<Orbit> back;
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(SameOrbit(records[i].orbit, ens.orbits[i]));
      CHECK(records[i].seed == ens.seeds[i]);
      CHECK(records[i].index == i);
      CHECK(records[i].game_hash == GameHash(sys));
      back.push_back(records[i].orbit);
    }
    // Statistics and sections computed from the re-read orbits are
    // byte-identical to the in-process ones.
    CHECK(StatsToJson(ComputeStats(back, TimeParam::kFictitiousPlay)) ==
          StatsToJson(ComputeStats(ens.orbits, TimeParam::kFictitiousPlay)));
    const Plane plane = MakePlane(Side::kA, 0, 1);
    const auto charts = BuildSectionCharts(sys, plane);
    CHECK(SectionsCsv({{plane, SectionHits(sys, back[0], plane, charts)}}) ==
          SectionsCsv({{plane, SectionHits(sys, ens.orbits[0], plane, charts)}}));
    // Writing again reproduces the text.
    std::string again;
    for (std::size_t i = 0; i < 3; ++i) again += OrbitToJsonl(sys, back[i], records[i].seed, i);
    CHECK(again == text);
  }
}

TEST_CASE("malformed orbit files are rejected") {
  for (const char* bad : {"", "not json\n", "{\"k\":0}\n",
                          "{\"type\":\"header\",\"mode\":\"xx\"}\n"}) {
    CHECK_THROWS_AS(ParseOrbitJsonl(bad), Error);
  }
}

TEST_CASE("itinerary and plane parsing") {
  const auto a = ParseItinerary("11,12,22");
  const auto b = ParseItinerary("(1,1),(1,2),(2,2)");
  CHECK(a == b);
  CHECK(a == reference::Labels({11, 12, 22}));
  CHECK(FormatLabels(a) == "11,12,22");
  for (const char* bad : {"", "14", "1", "11,,12", "(1,1),(1,"}) {
    CHECK_THROWS_AS(ParseItinerary(bad), Error);
  }
  const Plane p = ParsePlane("B:3,1");
  CHECK(p == MakePlane(Side::kB, 0, 2));
  CHECK(FormatPlane(p) == "B:1,3");
  for (const char* bad : {"C:1,2", "A:1,1", "A:1,4", "A1,2"}) {
    CHECK_THROWS_AS(ParsePlane(bad), Error);
  }
}

TEST_CASE("game files") {
  const GameSpec spec = ParseGameJson(R"({"A": [[1,2,3],[4,5,6],[7,8,10]]})");
  CHECK(spec.a(2, 2) == 10.0);
  CHECK(!spec.b);
  const GameSpec again = ParseGameJson(GameToJson(spec));
  CHECK(again.a == spec.a);
  for (const char* bad : {"{}", "[1,2]", R"({"A": [[1,2],[3,4]]})",
                          R"({"A": [[1,2,"x"],[4,5,6],[7,8,9]]})", "{"}) {
    try {
      ParseGameJson(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidInput);
    }
  }
}

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(FormatDouble(0.1) == "0.10000000000000001");
  CHECK(std::strtod(FormatDouble(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
}

TEST_CASE("stats report wrong clock for hamiltonian orbits") {
  const GameSystem sys = GameSystem::Validate(reference::Example1());
  EnsembleOptions opts;
  opts.orbits = 1;
  opts.transitions = 100;
  const auto ens = SimulateEnsemble(sys, opts);
  CHECK_THROWS_AS(ComputeStats(ens.orbits, TimeParam::kBestResponse), Error);
  CHECK_NOTHROW(ComputeStats(ens.orbits, TimeParam::kFictitiousPlay));
}

}  // TEST_SUITE
