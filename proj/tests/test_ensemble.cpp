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

#include "core/ensemble.hpp"
#include "core/io.hpp"
#include "core/reference.hpp"

using namespace brlab;

namespace {

std::string Run(const GameSystem& sys, const EnsembleOptions& opts, const char* threads) {
  setenv("BRLAB_THREADS", threads, 1);
  const auto ens = SimulateEnsemble(sys, opts);
  unsetenv("BRLAB_THREADS");
  std::string text;
  for (std::size_t i = 0; i < ens.orbits.size(); ++i) {
    text += OrbitToJsonl(sys, ens.orbits[i], ens.seeds[i], i);
  }
  return text;
}

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("output does not depend on the worker count") {
  const GameSystem sys = GameSystem::Validate(reference::Example1());
  EnsembleOptions opts;
  opts.mode = FlowMode::kBestResponse;
  opts.orbits = 16;
  opts.transitions = 300;
  opts.seed = 5;
  const std::string one = Run(sys, opts, "1");
  CHECK(one == Run(sys, opts, "4"));
  CHECK(one == Run(sys, opts, "16"));
  opts.seed = 6;
  CHECK(one != Run(sys, opts, "1"));
}

TEST_CASE("orbit seeds are derived from the base seed") {
  const GameSystem sys = GameSystem::Validate(reference::Example3());
  EnsembleOptions opts;
  opts.orbits = 5;
  opts.transitions = 10;
  opts.seed = 0xabcdef;
  const auto ens = SimulateEnsemble(sys, opts);
  REQUIRE(ens.seeds.size() == 5);
  for (uint64_t i = 0; i < 5; ++i) CHECK(ens.seeds[i] == (0xabcdefULL ^ i));
  // A one-orbit ensemble with seed s ^ 3 reproduces orbit 3.
  EnsembleOptions single = opts;
  single.orbits = 1;
  single.seed = opts.seed ^ 3;
  const auto one = SimulateEnsemble(sys, single);
  CHECK(one.orbits[0].itinerary == ens.orbits[3].itinerary);
}

TEST_CASE("random starts are interior and off the planes") {
  const GameSystem sys = GameSystem::Validate(reference::Example2());
  std::mt19937_64 rng(8);
  for (int k = 0; k < 500; ++k) {
    const Vec6 x = RandomRegionPoint(sys, rng);
    CHECK(InSimplex(x.head<3>(), 1e-14));
    CHECK(x.minCoeff() > 0.0);
    CHECK(InSimplex(x.tail<3>(), 1e-14));
    CHECK_NOTHROW(RegionOf(sys, x.head<3>(), x.tail<3>()));
  }
}

TEST_CASE("fixed starts are projected in hamiltonian mode") {
  const GameSystem sys = GameSystem::Validate(reference::Example1());
  Vec6 x;
  x << 0.2, 0.3, 0.5, 0.6, 0.3, 0.1;
  EnsembleOptions opts;
  opts.orbits = 2;
  opts.transitions = 50;
  opts.initial = x;
  const auto ens = SimulateEnsemble(sys, opts);
  CHECK(ens.orbits[0].itinerary == ens.orbits[1].itinerary);
  CHECK(HamiltonianOfDisplacement(sys, ens.orbits[0].initial - sys.equilibrium()) ==
        doctest::Approx(1.0));
  opts.mode = FlowMode::kBestResponse;
  const auto br = SimulateEnsemble(sys, opts);
  CHECK(br.orbits[0].initial == x);
  CHECK(br.orbits[0].itinerary == ens.orbits[0].itinerary);
}

TEST_CASE("fixed starts outside the simplex are rejected") {
  const GameSystem sys = GameSystem::Validate(reference::Example1());
  EnsembleOptions opts;
  opts.orbits = 1;
  opts.transitions = 5;
  for (FlowMode mode : {FlowMode::kHamiltonian, FlowMode::kBestResponse}) {
    opts.mode = mode;
    Vec6 x;
    x << 0.5, 0.3, 0.3, 0.2, 0.3, 0.5;
    opts.initial = x;
    CHECK_THROWS_AS(SimulateEnsemble(sys, opts), Error);
    x << 0.5, 0.3, 0.2, 1.1, -0.1, 0.0;
    opts.initial = x;
    CHECK_THROWS_AS(SimulateEnsemble(sys, opts), Error);
  }
}

}  // TEST_SUITE
