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

// Small convex-polygon toolkit for 2D section charts.

#ifndef BRLAB_CORE_GEOMETRY_HPP_
#define BRLAB_CORE_GEOMETRY_HPP_

#include <vector>

#include "core/common.hpp"

namespace brlab {

using Polygon = std::vector<Vec2>;  // counter-clockwise, no repeated vertex

// { u : g.u + h >= 0 }
struct HalfPlane {
  Vec2 g = Vec2::Zero();
  double h = 0.0;
  double Eval(const Vec2& u) const { return g.dot(u) + h; }
};

// Sutherland-Hodgman clip of a convex polygon by one half-plane.
Polygon Clip(const Polygon& poly, const HalfPlane& hp);
Polygon Clip(Polygon poly, const std::vector<HalfPlane>& hps);

double Area(const Polygon& poly);  // signed, positive for CCW
Vec2 Centroid(const Polygon& poly);
bool Contains(const Polygon& poly, const Vec2& u, double slack);

// Vertices of { u : all hps >= 0 } by pairwise intersection, CCW. Empty if
// the feasible set has no interior.
Polygon VertexEnumeration(const std::vector<HalfPlane>& hps, double slack);

// Half-planes whose intersection is the convex polygon.
std::vector<HalfPlane> EdgeHalfPlanes(const Polygon& poly);

}  // namespace brlab

#endif  // BRLAB_CORE_GEOMETRY_HPP_
