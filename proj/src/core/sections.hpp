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

// Surfaces of section. An indifference plane meets H = 1 in three flat
// pieces, one per best response of the player that does not switch there.
// Each piece gets an orthonormal 2D chart.
//
// H = 1 is taken in the affine hull of the simplex product, where it is a
// polyhedral 3-sphere around the equilibrium. The simplex bounds are not
// imposed: for games with small payoffs (Example 2 has H <= 1 on the whole
// product) the unit level leaves the simplex, and the flow is homogeneous
// about the equilibrium anyway.

#ifndef BRLAB_CORE_SECTIONS_HPP_
#define BRLAB_CORE_SECTIONS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "core/common.hpp"
#include "core/dynamics.hpp"
#include "core/game.hpp"
#include "core/geometry.hpp"

namespace brlab {

using Basis62 = Eigen::Matrix<double, 6, 2>;

struct SectionChart {
  Plane plane;
  // Best response of the non-switching player: BR_A for side B planes,
  // BR_B for side A planes.
  int piece = 0;
  Vec6 origin;   // absolute coordinates
  Basis62 basis; // orthonormal columns
  Polygon polygon;
  // Defining inequalities in chart coordinates, unit-normalized.
  std::vector<HalfPlane> constraints;

  Vec2 ToChart(const Vec6& x) const { return basis.transpose() * (x - origin); }
  Vec6 ToAmbient(const Vec2& u) const { return origin + basis * u; }
};

// Affine equalities (rows . d = rhs) and inequalities (rows . d + c >= 0) in
// displacement coordinates describing one piece.
struct PieceConstraints {
  Eigen::Matrix<double, 4, 6> eq;
  Eigen::Vector4d rhs;
  std::vector<std::pair<Vec6, double>> ineq;
};

PieceConstraints DescribePiece(const GameSystem& sys, Plane plane, int piece);

// Throws Error(kEmptyPiece) when the piece has no interior.
SectionChart BuildSectionChart(const GameSystem& sys, Plane plane, int piece);

// All three pieces; empty pieces come back as nullopt.
std::array<std::optional<SectionChart>, 3> BuildSectionCharts(
    const GameSystem& sys, Plane plane);

struct SectionHit {
  std::size_t hit_index = 0;  // event index within the orbit
  int piece = 0;
  Vec2 u;
  Vec6 x;  // on H = 1
};

// Events of `orbit` on `plane`, projected to H = 1 and expressed in the
// piece charts. Hits on an empty piece are dropped.
std::vector<SectionHit> SectionHits(
    const GameSystem& sys, const Orbit& orbit, Plane plane,
    const std::array<std::optional<SectionChart>, 3>& charts);

// Piece of a crossing of `plane` by a trajectory in region `region`.
int PieceOf(Plane plane, Label region);

}  // namespace brlab

#endif  // BRLAB_CORE_SECTIONS_HPP_
