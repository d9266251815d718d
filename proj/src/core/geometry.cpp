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

#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace brlab {

Polygon Clip(const Polygon& poly, const HalfPlane& hp) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const double fa = hp.Eval(a), fb = hp.Eval(b);
    if (fa >= 0.0) out.push_back(a);
    if ((fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0)) {
      const double t = fa / (fa - fb);
      out.push_back(a + t * (b - a));
    }
  }
  return out.size() >= 3 ? out : Polygon{};
}

Polygon Clip(Polygon poly, const std::vector<HalfPlane>& hps) {
  for (const auto& hp : hps) {
    if (poly.empty()) break;
    poly = Clip(poly, hp);
  }
  return poly;
}

double Area(const Polygon& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    s += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * s;
}

Vec2 Centroid(const Polygon& poly) {
  Vec2 c = Vec2::Zero();
  for (const auto& v : poly) c += v;
  return poly.empty() ? c : Vec2(c / static_cast<double>(poly.size()));
}

bool Contains(const Polygon& poly, const Vec2& u, double slack) {
  if (poly.size() < 3) return false;
  for (const auto& hp : EdgeHalfPlanes(poly)) {
    if (hp.Eval(u) < -slack) return false;
  }
  return true;
}

std::vector<HalfPlane> EdgeHalfPlanes(const Polygon& poly) {
  std::vector<HalfPlane> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = poly[(i + 1) % n] - poly[i];
    const double len = e.norm();
    if (len == 0.0) continue;
    // Inward normal of a CCW edge.
    const Vec2 g(-e.y() / len, e.x() / len);
    out.push_back({g, -g.dot(poly[i])});
  }
  return out;
}

Polygon VertexEnumeration(const std::vector<HalfPlane>& hps, double slack) {
  Polygon pts;
  for (std::size_t a = 0; a < hps.size(); ++a) {
    for (std::size_t b = a + 1; b < hps.size(); ++b) {
      Mat2 m;
      m.row(0) = hps[a].g.transpose();
      m.row(1) = hps[b].g.transpose();
      const double det = m.determinant();
      if (std::abs(det) < 1e-12 * hps[a].g.norm() * hps[b].g.norm()) continue;
      const Vec2 u = m.inverse() * Vec2(-hps[a].h, -hps[b].h);
      bool feasible = true;
      for (const auto& hp : hps) {
        if (hp.Eval(u) < -slack * hp.g.norm()) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      bool dup = false;
      for (const auto& p : pts) dup = dup || (p - u).norm() <= 1e-12 * (1.0 + u.norm());
      if (!dup) pts.push_back(u);
    }
  }
  if (pts.size() < 3) return {};
  const Vec2 c = Centroid(pts);
  std::sort(pts.begin(), pts.end(), [&](const Vec2& x, const Vec2& y) {
    return std::atan2(x.y() - c.y(), x.x() - c.x()) <
           std::atan2(y.y() - c.y(), y.x() - c.x());
  });
  if (std::abs(Area(pts)) <= 1e-18) return {};
  return pts;
}

}  // namespace brlab
