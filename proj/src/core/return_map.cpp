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

#include "core/return_map.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "core/diagram.hpp"
#include "core/parallel.hpp"
#include "core/statistics.hpp"

namespace brlab {

const char* ReturnKindName(ReturnKind kind) {
  switch (kind) {
    case ReturnKind::kPeriodic: return "periodic";
    case ReturnKind::kElliptic: return "elliptic";
    case ReturnKind::kNonElliptic: return "non_elliptic";
  }
  return "?";
}

Label StartRegion(const GameSystem& sys, const SectionChart& chart) {
  const auto diagram = TransitionDiagram::FromGame(sys);
  const Plane& pl = chart.plane;
  Label a, b;
  if (pl.side == Side::kB) {
    a = {chart.piece, pl.lo};
    b = {chart.piece, pl.hi};
  } else {
    a = {pl.lo, chart.piece};
    b = {pl.hi, chart.piece};
  }
  return diagram.Arrow(a, b) ? b : a;
}

namespace {

std::string LabelText(Label l) {
  return "(" + std::to_string(l.row + 1) + "," + std::to_string(l.col + 1) + ")";
}

SectionChart FirstChart(const GameSystem& sys, Plane plane) {
  for (auto& c : BuildSectionCharts(sys, plane)) {
    if (c) return *c;
  }
  throw Error(ErrorCode::kEmptyPiece, "plane has no nonempty piece");
}

}  // namespace

LoopMap LoopReturnMap(const GameSystem& sys, const std::vector<Label>& loop,
                      Plane plane) {
  LoopMap out;
  const std::size_t n = loop.size();
  if (n == 0) {
    out.chart = FirstChart(sys, plane);
    out.partial.assign(1, AffineMap6{});
    return out;
  }
  const auto diagram = TransitionDiagram::FromGame(sys);
  std::vector<Plane> planes(n);
  std::optional<std::size_t> first_cross;
  for (std::size_t k = 0; k < n; ++k) {
    const Label from = loop[k], to = loop[(k + 1) % n];
    const auto p = TransitionPlane(from, to);
    if (!p || !diagram.Arrow(from, to)) {
      throw Error(ErrorCode::kIllegalLoop,
                  LabelText(from) + " -> " + LabelText(to) +
                      " is not an arrow of the transition diagram");
    }
    planes[k] = *p;
    if (*p == plane && !first_cross) first_cross = k;
  }
  if (!first_cross) {
    throw Error(ErrorCode::kIllegalLoop, "loop never crosses the base plane");
  }
  const std::size_t start = (*first_cross + 1) % n;
  out.loop.resize(n);
  std::vector<Plane> rp(n);  // rp[i]: plane crossed when leaving loop[i]
  for (std::size_t i = 0; i < n; ++i) {
    out.loop[i] = loop[(start + i) % n];
    rp[i] = planes[(start + i) % n];
  }
  out.chart = BuildSectionChart(sys, plane, PieceOf(plane, out.loop[0]));

  out.partial.reserve(n + 1);
  out.partial.emplace_back();
  for (std::size_t i = 0; i < n; ++i) {
    const Plane entry = rp[(i + n - 1) % n];
    const auto seg = SegmentAffineMap(sys, out.loop[i], entry, rp[i]);
    out.partial.push_back(out.partial.back().Then(seg));
  }
  const AffineMap6& full = out.partial.back();
  const Basis62& e = out.chart.basis;
  const Vec6& o = out.chart.origin;
  out.map.m = e.transpose() * full.linear * e;
  out.map.b = e.transpose() * (full.Apply(o) - o);
  return out;
}

std::optional<std::pair<int64_t, int64_t>> RationalApproximation(
    double x, int max_den, double tol) {
  for (int64_t q = 1; q <= max_den; ++q) {
    const double p = std::round(x * static_cast<double>(q));
    if (std::abs(x - p / static_cast<double>(q)) <= tol) {
      return std::make_pair(static_cast<int64_t>(p), q);
    }
  }
  return std::nullopt;
}

ReturnMapClass ClassifyReturnMap(const AffineMap2D& t) {
  ReturnMapClass c;
  const Mat2& m = t.m;
  c.trace = m.trace();
  c.det = m.determinant();
  const Mat2 id = Mat2::Identity();
  const double eps = 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff());

  if ((m - id).cwiseAbs().maxCoeff() <= eps) {
    if (t.b.norm() <= eps) {
      c.kind = ReturnKind::kPeriodic;
      c.order = 1;
      c.note = "identity map";
    } else {
      c.note = "pure translation: no fixed point";
    }
    return c;
  }
  if ((m + id).cwiseAbs().maxCoeff() <= eps) {
    c.kind = ReturnKind::kPeriodic;
    c.order = 2;
    c.angle = std::numbers::pi;
    c.fixed_point = Vec2(t.b / 2.0);
    c.form = id;
    return c;
  }
  const Mat2 i_m = id - m;
  if (std::abs(i_m.determinant()) > 1e-14) {
    c.fixed_point = Vec2(i_m.inverse() * t.b);
  } else {
    c.note = "I - M is singular: no fixed point";
  }
  if (std::abs(c.trace) >= 2.0) return c;

  // M'(JM)M = JM for det M = 1, so the symmetric part of JM is invariant. It
  // is definite exactly when |trace| < 2.
  Mat2 s;
  s << m(1, 0), 0.5 * (m(1, 1) - m(0, 0)), 0.5 * (m(1, 1) - m(0, 0)), -m(0, 1);
  if (s(0, 0) < 0.0) s = -s;
  c.form = s / std::sqrt(s.determinant());
  c.angle = std::copysign(std::acos(c.trace / 2.0), m(1, 0));
  c.kind = ReturnKind::kElliptic;
  if (auto r = RationalApproximation(c.angle / (2.0 * std::numbers::pi))) {
    c.kind = ReturnKind::kPeriodic;
    c.order = static_cast<int>(r->second);
  }
  return c;
}

std::vector<HalfPlane> OnePassConstraints(const GameSystem& sys,
                                          const LoopMap& loop) {
  const Vec6 e = sys.equilibrium();
  const Basis62& basis = loop.chart.basis;
  const Vec6& o = loop.chart.origin;
  std::vector<HalfPlane> out;
  const std::size_t n = loop.loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Label r = loop.loop[i];
    std::vector<Plane> walls;
    for (int k = 0; k < 3; ++k) {
      if (k != r.row) walls.push_back(MakePlane(Side::kA, r.row, k));
      if (k != r.col) walls.push_back(MakePlane(Side::kB, r.col, k));
    }
    for (const Plane& w : walls) {
      const Vec6 a = PlaneForm(sys, r, w);
      for (const AffineMap6* f : {&loop.partial[i], &loop.partial[i + 1]}) {
        HalfPlane hp{basis.transpose() * (f->linear.transpose() * a),
                     a.dot(f->Apply(o) - e)};
        const double gn = hp.g.norm();
        if (gn <= 1e-12 * a.norm()) {
          // Constant on the chart: either always true or never.
          if (hp.h < -1e-9 * a.norm()) out.push_back({Vec2::Zero(), -1.0});
          continue;
        }
        hp.g /= gn;
        hp.h /= gn;
        out.push_back(hp);
      }
    }
  }
  return out;
}

ItineraryDomain ComputeItineraryDomain(const GameSystem& sys,
                                       const LoopMap& loop,
                                       const ReturnMapClass& cls,
                                       int ellipse_samples) {
  ItineraryDomain dom;
  dom.one_pass = Clip(loop.chart.polygon, OnePassConstraints(sys, loop));
  if (dom.one_pass.empty()) return dom;

  if (cls.kind == ReturnKind::kPeriodic && cls.order >= 1) {
    // Finite order: intersect the preimages T^-j(one_pass), j < order.
    const auto edges = EdgeHalfPlanes(dom.one_pass);
    Polygon u = dom.one_pass;
    AffineMap2D tj;
    for (int j = 1; j < cls.order && !u.empty(); ++j) {
      tj = tj.Then(loop.map);
      for (const auto& hp : edges) {
        const Vec2 g = tj.m.transpose() * hp.g;
        u = Clip(u, HalfPlane{g, hp.g.dot(tj.b) + hp.h});
        if (u.empty()) break;
      }
    }
    dom.polygon = u;
    dom.empty = u.empty();
    return dom;
  }
  if (cls.kind != ReturnKind::kElliptic || !cls.fixed_point) return dom;

  const Vec2 c = *cls.fixed_point;
  const Mat2 s_inv = cls.form.inverse();
  double level = std::numeric_limits<double>::infinity();
  for (const auto& hp : EdgeHalfPlanes(dom.one_pass)) {
    const double gap = hp.Eval(c);
    if (gap <= 0.0) return dom;  // fixed point outside the one-pass domain
    level = std::min(level, gap * gap / hp.g.dot(s_inv * hp.g));
  }
  dom.empty = false;
  dom.is_ellipse = true;
  dom.center = c;
  dom.form = cls.form;
  dom.level = level;
  const Eigen::LLT<Mat2> llt(cls.form);
  const Mat2 lt_inv = Mat2(llt.matrixU()).inverse();
  for (int k = 0; k < ellipse_samples; ++k) {
    const double a = 2.0 * std::numbers::pi * k / ellipse_samples;
    dom.polygon.push_back(c + std::sqrt(level) * lt_inv * Vec2(std::cos(a), std::sin(a)));
  }
  if (Area(dom.polygon) < 0.0) std::reverse(dom.polygon.begin(), dom.polygon.end());
  return dom;
}

namespace {

std::vector<Label> LeastLabelRotation(const std::vector<Label>& cycle) {
  std::vector<Label> best = cycle;
  std::vector<Label> rot = cycle;
  for (std::size_t r = 1; r < cycle.size(); ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

}  // namespace

IslandScan ScanIslands(const GameSystem& sys, const SectionChart& chart,
                       const IslandScanOptions& opts) {
  IslandScan scan;
  const int g = std::max(1, opts.grid);
  const std::size_t total = static_cast<std::size_t>(g) * g;
  std::vector<Vec2> points(total);
  {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double cell = 2.0 * opts.half_width / g;
    for (int iy = 0; iy < g; ++iy) {
      for (int ix = 0; ix < g; ++ix) {
        const double jx = unit(rng), jy = unit(rng);
        points[iy * g + ix] =
            opts.center + Vec2(-opts.half_width + (ix + jx) * cell,
                               -opts.half_width + (iy + jy) * cell);
      }
    }
  }
  scan.sampled = total;

  struct Result {
    bool inside = false;
    bool failed = false;
    std::vector<Label> cycle;
  };
  std::vector<Result> results(total);
  const Label start = StartRegion(sys, chart);
  ParallelFor(total, [&](std::size_t i) {
    Result& r = results[i];
    if (!Contains(chart.polygon, points[i], 0.0)) return;
    r.inside = true;
    try {
      const Orbit orbit = IntegrateHamiltonianFrom(
          sys, chart.ToAmbient(points[i]), start, opts.transitions);
      if (auto per = DetectPeriodicItinerary(orbit.itinerary, opts.max_period)) {
        std::vector<Label> cyc(orbit.itinerary.end() - per->period,
                               orbit.itinerary.end());
        r.cycle = LeastLabelRotation(cyc);
      }
    } catch (const Error&) {
      r.failed = true;
    }
  });

  std::map<std::vector<Label>, std::optional<Island>> found;
  for (std::size_t i = 0; i < total; ++i) {
    const Result& r = results[i];
    scan.simulated += r.inside;
    scan.failures += r.failed;
    if (r.cycle.empty()) continue;
    ++scan.periodic;
    auto it = found.find(r.cycle);
    if (it == found.end()) {
      std::optional<Island> island;
      try {
        const LoopMap lm = LoopReturnMap(sys, r.cycle, chart.plane);
        const ReturnMapClass cls = ClassifyReturnMap(lm.map);
        if (std::abs(cls.trace) < 2.0 && cls.fixed_point) {
          island = Island{r.cycle, r.cycle.size(), cls, points[i], 0};
        }
      } catch (const Error&) {
      }
      it = found.emplace(r.cycle, island).first;
    }
    if (it->second) ++it->second->hits;
  }
  for (auto& [cycle, island] : found) {
    if (island) scan.islands.push_back(*island);
  }
  std::stable_sort(scan.islands.begin(), scan.islands.end(),
                   [](const Island& a, const Island& b) { return a.period < b.period; });
  return scan;
}

}  // namespace brlab
