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

#include "core/sections.hpp"

#include <cmath>

namespace brlab {

int PieceOf(Plane plane, Label region) {
  return plane.side == Side::kB ? region.row : region.col;
}

PieceConstraints DescribePiece(const GameSystem& sys, Plane plane, int piece) {
  if (piece < 0 || piece > 2 || plane.lo == plane.hi || plane.lo < 0 ||
      plane.hi > 2) {
    throw Error(ErrorCode::kInvalidInput, "bad plane or piece index");
  }
  const Mat3& m = sys.payoff();
  PieceConstraints c;
  c.eq.setZero();
  c.eq.block<1, 3>(0, 0).setOnes();
  c.eq.block<1, 3>(1, 3).setOnes();
  c.rhs << 0.0, 0.0, 0.0, 1.0;
  const int i = plane.lo, j = plane.hi, o = Other(i, j);

  auto add = [&](const Vec3& dp, const Vec3& dq) {
    Vec6 row;
    row << dp, dq;
    c.ineq.emplace_back(row, 0.0);
  };
  const Vec3 zero = Vec3::Zero();
  if (plane.side == Side::kB) {
    // (pM)_i = (pM)_j <= (pM)_o, BR_A = piece, H = (M dq)_k - (dp M)_i.
    const int k = piece;
    c.eq.block<1, 3>(2, 0) = (m.col(i) - m.col(j)).transpose();
    c.eq.block<1, 3>(3, 0) = -m.col(i).transpose();
    c.eq.block<1, 3>(3, 3) = m.row(k);
    add(m.col(o) - m.col(i), zero);
    for (int r = 0; r < 3; ++r) {
      if (r != k) add(zero, (m.row(k) - m.row(r)).transpose());
    }
  } else {
    // (Mq)_i = (Mq)_j >= (Mq)_o, BR_B = piece, H = (M dq)_i - (dp M)_l.
    const int l = piece;
    c.eq.block<1, 3>(2, 3) = m.row(i) - m.row(j);
    c.eq.block<1, 3>(3, 0) = -m.col(l).transpose();
    c.eq.block<1, 3>(3, 3) = m.row(i);
    add(zero, (m.row(i) - m.row(o)).transpose());
    for (int s = 0; s < 3; ++s) {
      if (s != l) add(m.col(s) - m.col(l), zero);
    }
  }
  return c;
}

namespace {

std::vector<HalfPlane> Restrict(const PieceConstraints& c, const Vec6& d0,
                                const Basis62& basis) {
  std::vector<HalfPlane> out;
  for (const auto& [row, k] : c.ineq) {
    HalfPlane hp{basis.transpose() * row, row.dot(d0) + k};
    const double n = hp.g.norm();
    if (n == 0.0) continue;
    hp.g /= n;
    hp.h /= n;
    out.push_back(hp);
  }
  return out;
}

}  // namespace

SectionChart BuildSectionChart(const GameSystem& sys, Plane plane, int piece) {
  const PieceConstraints c = DescribePiece(sys, plane, piece);
  const Vec6 e = sys.equilibrium();

  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 6>> svd(
      c.eq, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(3) <= 1e-12 * svd.singularValues()(0)) {
    throw Error(ErrorCode::kEmptyPiece, "piece equalities are dependent");
  }
  const Vec6 d0 = svd.solve(c.rhs);
  const Basis62 null = svd.matrixV().rightCols<2>();

  const Polygon raw = VertexEnumeration(Restrict(c, d0, null), 1e-10);
  if (raw.empty()) {
    throw Error(ErrorCode::kEmptyPiece, "piece has empty interior");
  }

  // Chart anchored at the first vertex, axes from Gram-Schmidt on two edges.
  SectionChart chart;
  chart.plane = plane;
  chart.piece = piece;
  const Vec6 v0 = d0 + null * raw.front();
  const Vec6 e1 = null * (raw[1] - raw[0]);
  const Vec6 e2 = null * (raw.back() - raw[0]);
  chart.basis.col(0) = e1.normalized();
  chart.basis.col(1) =
      (e2 - chart.basis.col(0).dot(e2) * chart.basis.col(0)).normalized();
  chart.origin = e + v0;
  for (const auto& u : raw) chart.polygon.push_back(chart.ToChart(e + d0 + null * u));
  if (Area(chart.polygon) < 0.0) {
    chart.basis.col(1) = -chart.basis.col(1);
    for (auto& u : chart.polygon) u.y() = -u.y();
  }
  chart.constraints = Restrict(c, v0, chart.basis);
  return chart;
}

std::array<std::optional<SectionChart>, 3> BuildSectionCharts(
    const GameSystem& sys, Plane plane) {
  std::array<std::optional<SectionChart>, 3> out;
  for (int k = 0; k < 3; ++k) {
    try {
      out[k] = BuildSectionChart(sys, plane, k);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kEmptyPiece) throw;
    }
  }
  return out;
}

std::vector<SectionHit> SectionHits(
    const GameSystem& sys, const Orbit& orbit, Plane plane,
    const std::array<std::optional<SectionChart>, 3>& charts) {
  const Vec6 e = sys.equilibrium();
  std::vector<SectionHit> hits;
  for (std::size_t k = 0; k < orbit.events.size(); ++k) {
    const auto& ev = orbit.events[k];
    if (ev.plane != plane) continue;
    const int piece = PieceOf(plane, ev.region);
    if (!charts[piece]) continue;
    const Vec6 d = ev.point - e;
    const double h = HamiltonianOfDisplacement(sys, d);
    const Vec6 x = e + d / h;
    hits.push_back({k, piece, charts[piece]->ToChart(x), x});
  }
  return hits;
}

}  // namespace brlab
