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

// Exact first-return maps along periodic itineraries, their classification,
// and the domain of section points that follow a given itinerary forever.

#ifndef BRLAB_CORE_RETURN_MAP_HPP_
#define BRLAB_CORE_RETURN_MAP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/dynamics.hpp"
#include "core/game.hpp"
#include "core/geometry.hpp"
#include "core/sections.hpp"

namespace brlab {

struct AffineMap2D {
  Mat2 m = Mat2::Identity();
  Vec2 b = Vec2::Zero();

  Vec2 Apply(const Vec2& u) const { return m * u + b; }
  AffineMap2D Then(const AffineMap2D& next) const {
    return {next.m * m, next.m * b + next.b};
  }
};

struct LoopMap {
  // The loop rotated so that loop[0] is entered across the base plane.
  std::vector<Label> loop;
  SectionChart chart;
  AffineMap2D map;
  // partial[i] carries a base-plane point to the entry of segment i;
  // partial[loop.size()] is the full return.
  std::vector<AffineMap6> partial;
};

// Region a section point flows into: the head of the diagram arrow across
// the chart's piece.
Label StartRegion(const GameSystem& sys, const SectionChart& chart);

// Throws kIllegalLoop if some step is not a diagram arrow or the loop never
// crosses `plane`; kParallelFlow if a segment runs along its exit plane.
LoopMap LoopReturnMap(const GameSystem& sys, const std::vector<Label>& loop,
                      Plane plane);

enum class ReturnKind { kPeriodic, kElliptic, kNonElliptic };

const char* ReturnKindName(ReturnKind kind);

struct ReturnMapClass {
  ReturnKind kind = ReturnKind::kNonElliptic;
  int order = 0;  // for kPeriodic
  double trace = 0.0;
  double det = 0.0;
  double angle = 0.0;  // radians, in (-pi, pi)
  std::optional<Vec2> fixed_point;
  Mat2 form = Mat2::Zero();  // invariant quadratic form, det 1
  std::string note;
};

// Rational sieve: smallest q <= max_den with |x - p/q| <= tol.
std::optional<std::pair<int64_t, int64_t>> RationalApproximation(
    double x, int max_den = 1000, double tol = 1e-9);

ReturnMapClass ClassifyReturnMap(const AffineMap2D& t);

struct ItineraryDomain {
  // Chart points whose next return follows the loop once.
  Polygon one_pass;
  // Points following the loop forever. For an elliptic map this is the
  // largest invariant ellipse (u - c)' S (u - c) <= level inside one_pass;
  // `polygon` samples its boundary. For a finite-order map it is the exact
  // polygon intersection of the first `order` preimages.
  bool empty = true;
  bool is_ellipse = false;
  Vec2 center = Vec2::Zero();
  Mat2 form = Mat2::Zero();
  double level = 0.0;
  Polygon polygon;
};

ItineraryDomain ComputeItineraryDomain(const GameSystem& sys,
                                       const LoopMap& loop,
                                       const ReturnMapClass& cls,
                                       int ellipse_samples = 256);

// The half-planes in chart coordinates behind `one_pass`.
std::vector<HalfPlane> OnePassConstraints(const GameSystem& sys,
                                          const LoopMap& loop);

struct Island {
  std::vector<Label> cycle;  // least rotation of the periodic itinerary
  std::size_t period = 0;
  ReturnMapClass cls;
  Vec2 seed_point = Vec2::Zero();  // first scanned point that found it
  std::size_t hits = 0;            // scanned points inside it
};

struct IslandScanOptions {
  Vec2 center = Vec2::Zero();
  double half_width = 0.0;
  int grid = 100;  // grid x grid jittered samples
  uint64_t seed = 0;
  std::size_t transitions = 4000;
  std::size_t max_period = 1000;
};

struct IslandScan {
  std::size_t sampled = 0;
  std::size_t simulated = 0;  // inside the piece polygon
  std::size_t periodic = 0;
  std::size_t failures = 0;   // degenerate crossings
  std::vector<Island> islands;  // elliptic only, ordered by period
};

IslandScan ScanIslands(const GameSystem& sys, const SectionChart& chart,
                       const IslandScanOptions& opts);

}  // namespace brlab

#endif  // BRLAB_CORE_RETURN_MAP_HPP_
