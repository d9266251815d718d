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

#include "core/game.hpp"

#include <cmath>
#include <sstream>

namespace brlab {
namespace {

Eigen::Matrix<double, 9, 6> WitnessDesign(const Mat3& b) {
  // Unknowns: g, f_0, f_1, f_2, h_1, h_2 (h_0 = 0).
  Eigen::Matrix<double, 9, 6> design = Eigen::Matrix<double, 9, 6>::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r = 3 * i + j;
      design(r, 0) = b(i, j);
      design(r, 1 + j) = 1.0;
      if (i > 0) design(r, 3 + i) = 1.0;
    }
  }
  return design;
}

ZeroSumWitness FindWitness(const Mat3& a, const Mat3& b) {
  ZeroSumWitness w;
  if (b == -a) return w;  // exact, keeps integer games exact downstream

  const auto design = WitnessDesign(b);
  Eigen::Matrix<double, 9, 1> rhs;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) rhs(3 * i + j) = -a(i, j);
  }
  const Eigen::Matrix<double, 6, 1> x = design.colPivHouseholderQr().solve(rhs);
  w.g = x(0);
  w.f = x.segment<3>(1);
  w.h = Vec3(0.0, x(4), x(5));
  w.residual = (design * x - rhs).cwiseAbs().maxCoeff();
  return w;
}

// Solves M y = c 1, 1'y = 1 (or the transposed system). Returns nullopt when
// the bordered matrix is singular.
std::optional<std::pair<Vec3, double>> SolveIndifference(const Mat3& m) {
  Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
  k.topLeftCorner<3, 3>() = m;
  k.block<3, 1>(0, 3) = -Eigen::Vector3d::Ones();
  k.block<1, 3>(3, 0) = Eigen::RowVector3d::Ones();
  Eigen::FullPivLU<Eigen::Matrix4d> lu(k);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::Vector4d y = lu.solve(Eigen::Vector4d(0, 0, 0, 1));
  return std::make_pair(Vec3(y.head<3>()), y(3));
}

std::string Pos(int i, int j) {
  std::ostringstream os;
  os << "(" << i + 1 << "," << j + 1 << ")";
  return os.str();
}

}  // namespace

GameSystem GameSystem::Validate(const Mat3& a, const std::optional<Mat3>& b_in,
                                const Tolerances& tol) {
  const Mat3 b = b_in ? *b_in : Mat3(-a);
  if (!a.allFinite() || !b.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "payoff entries must be finite");
  }

  GameSystem sys;
  sys.a_ = a;
  sys.b_ = b;
  sys.tol_ = tol;
  sys.scale_ = a.cwiseAbs().maxCoeff();
  const double scale_b = b.cwiseAbs().maxCoeff();
  if (sys.scale_ == 0.0 || scale_b == 0.0) {
    throw Error(ErrorCode::kDegenerateMatrix, "payoff matrix is zero");
  }

  // Strict preferences within each column of A and each row of B.
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      for (int i2 = i + 1; i2 < 3; ++i2) {
        if (std::abs(a(i, j) - a(i2, j)) <= tol.tie * sys.scale_) {
          throw Error(ErrorCode::kDegenerateMatrix,
                      "a" + Pos(i, j) + " = a" + Pos(i2, j));
        }
        if (std::abs(b(j, i) - b(j, i2)) <= tol.tie * scale_b) {
          throw Error(ErrorCode::kDegenerateMatrix,
                      "b" + Pos(j, i) + " = b" + Pos(j, i2));
        }
      }
    }
  }

  sys.witness_ = FindWitness(a, b);
  if (!(sys.witness_.residual < tol.zero_sum * sys.scale_) ||
      !(sys.witness_.g > 0.0)) {
    std::ostringstream os;
    os << "least-squares residual " << sys.witness_.residual << ", g = "
       << sys.witness_.g;
    throw Error(ErrorCode::kNotZeroSumEquivalent, os.str());
  }
  sys.m_ = a + Vec3::Ones() * sys.witness_.f.transpose();

  Eigen::JacobiSVD<Mat3> svd(sys.m_);
  const auto sv = svd.singularValues();
  if (sv(2) == 0.0 || sv(0) / sv(2) > tol.max_condition) {
    throw Error(ErrorCode::kNoInteriorEquilibrium,
                "payoff matrix is singular or ill-conditioned");
  }

  const auto col = SolveIndifference(sys.m_);
  const auto row = SolveIndifference(sys.m_.transpose());
  if (!col || !row) {
    throw Error(ErrorCode::kNoInteriorEquilibrium,
                "indifference system has no unique solution");
  }
  sys.nash_.eb = col->first;
  sys.nash_.ea = row->first;
  sys.nash_.value = col->second;
  if (sys.nash_.ea.minCoeff() <= tol.interior ||
      sys.nash_.eb.minCoeff() <= tol.interior) {
    std::ostringstream os;
    os << "equilibrium (" << sys.nash_.ea.transpose() << " | "
       << sys.nash_.eb.transpose() << ") is not interior";
    throw Error(ErrorCode::kNoInteriorEquilibrium, os.str());
  }
  if (std::abs(row->second - col->second) > 1e-10 * sys.scale_) {
    throw Error(ErrorCode::kNotZeroSumEquivalent,
                "row and column values differ");
  }
  return sys;
}

BestResponses ComputeBestResponses(const GameSystem& sys, const Vec3& p,
                                   const Vec3& q) {
  const Mat3& m = sys.payoff();
  const Vec3 aq = m * q;
  const Vec3 pa = m.transpose() * p;
  const double band = sys.tie_band();
  const double hi = aq.maxCoeff();
  const double lo = pa.minCoeff();
  BestResponses br;
  for (int i = 0; i < 3; ++i) {
    if (aq(i) >= hi - band) br.a.insert(i);
    if (pa(i) <= lo + band) br.b.insert(i);
  }
  return br;
}

Label RegionOf(const GameSystem& sys, const Vec3& p, const Vec3& q) {
  const BestResponses br = ComputeBestResponses(sys, p, q);
  if (br.a.size() != 1 || br.b.size() != 1) {
    throw Error(ErrorCode::kOnIndifferencePlane,
                "best response is not unique at this point");
  }
  return {br.a.first(), br.b.first()};
}

double Hamiltonian(const GameSystem& sys, const Vec3& p, const Vec3& q) {
  const Mat3& m = sys.payoff();
  return (m * q).maxCoeff() - (m.transpose() * p).minCoeff();
}

double HamiltonianOfDisplacement(const GameSystem& sys, const Vec6& d) {
  const Mat3& m = sys.payoff();
  return (m * d.tail<3>()).maxCoeff() -
         (m.transpose() * d.head<3>()).minCoeff();
}

Vec6 RadialProjection(const GameSystem& sys, const Vec6& x) {
  const Vec6 d = x - sys.equilibrium();
  const double h = HamiltonianOfDisplacement(sys, d);
  if (d.cwiseAbs().maxCoeff() == 0.0 || h <= 1e-12) {
    throw Error(ErrorCode::kAtEquilibrium, "point is at the equilibrium");
  }
  return sys.equilibrium() + d / h;
}

Vec6 ProjectToLevelSet(const GameSystem& sys, const Vec3& p, const Vec3& q) {
  const Vec6 x = RadialProjection(sys, Join(p, q));
  if (!InSimplex(x.head<3>(), sys.tol().simplex) ||
      !InSimplex(x.tail<3>(), sys.tol().simplex)) {
    throw Error(ErrorCode::kOutsideSimplex,
                "level set H = 1 is not reached inside the simplex");
  }
  return x;
}

Vec3 ProjectionDirectionA(const GameSystem& sys) {
  const Vec3 y = sys.payoff().transpose().fullPivLu().solve(Vec3::Ones());
  return y / y.sum();
}

Vec3 ProjectionDirectionB(const GameSystem& sys) {
  const Vec3 y = sys.payoff().fullPivLu().solve(Vec3::Ones());
  return y / y.sum();
}

bool InSimplex(const Vec3& x, double slack) {
  return x.minCoeff() >= -slack && std::abs(x.sum() - 1.0) <= slack;
}

}  // namespace brlab
