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

#ifndef BRLAB_CORE_GAME_HPP_
#define BRLAB_CORE_GAME_HPP_

#include <optional>

#include "core/common.hpp"

namespace brlab {

struct NashData {
  Vec3 ea;       // equilibrium strategy of player A (row)
  Vec3 eb;       // equilibrium strategy of player B (column)
  double value;  // common value lambda = mu
};

// Scalars of the linear equivalence a_ij + g b_ij + f_j + h_i = 0, with the
// scaling of A fixed to e = 1 and the gauge h_0 = 0.
struct ZeroSumWitness {
  double e = 1.0;
  double g = 1.0;
  Vec3 f = Vec3::Zero();
  Vec3 h = Vec3::Zero();
  double residual = 0.0;
};

// Small set of strategy indices.
class IndexSet {
 public:
  void insert(int i) { bits_ |= static_cast<unsigned>(1u << i); }
  bool contains(int i) const { return (bits_ >> i) & 1u; }
  int size() const { return __builtin_popcount(bits_); }
  int first() const { return __builtin_ctz(bits_); }
  unsigned bits() const { return bits_; }
  bool operator==(const IndexSet&) const = default;

 private:
  unsigned bits_ = 0;
};

struct BestResponses {
  IndexSet a;  // argmax_i (A q)_i
  IndexSet b;  // argmax_j (p B)_j
};

// A validated 3x3 game that is linearly equivalent to a zero-sum game and
// has a unique interior equilibrium. Immutable after construction.
class GameSystem {
 public:
  // Throws Error(kDegenerateMatrix | kNotZeroSumEquivalent |
  // kNoInteriorEquilibrium). B defaults to -A.
  static GameSystem Validate(const Mat3& a, const std::optional<Mat3>& b = {},
                             const Tolerances& tol = {});

  const Mat3& a() const { return a_; }
  const Mat3& b() const { return b_; }
  // Zero-sum representative A + 1 f': same best responses as (A, B), and
  // B's preferences are those of its negative.
  const Mat3& payoff() const { return m_; }
  const NashData& nash() const { return nash_; }
  const ZeroSumWitness& witness() const { return witness_; }
  const Tolerances& tol() const { return tol_; }
  double scale() const { return scale_; }
  double tie_band() const { return tol_.tie * scale_; }
  Vec6 equilibrium() const { return Join(nash_.ea, nash_.eb); }

 private:
  GameSystem() = default;

  Mat3 a_, b_, m_;
  NashData nash_{};
  ZeroSumWitness witness_{};
  Tolerances tol_{};
  double scale_ = 1.0;
};

BestResponses ComputeBestResponses(const GameSystem& sys, const Vec3& p,
                                   const Vec3& q);

// Throws Error(kOnIndifferencePlane) unless both best responses are unique.
Label RegionOf(const GameSystem& sys, const Vec3& p, const Vec3& q);

// H(p, q) = max_i (A q)_i - min_j (p A)_j, using the zero-sum representative.
double Hamiltonian(const GameSystem& sys, const Vec3& p, const Vec3& q);

// Same quantity written in displacement d = x - E from the equilibrium. It is
// positively homogeneous of degree one in d.
double HamiltonianOfDisplacement(const GameSystem& sys, const Vec6& d);

// Central projection from the equilibrium onto H = 1. Throws
// kAtEquilibrium or kOutsideSimplex.
Vec6 ProjectToLevelSet(const GameSystem& sys, const Vec3& p, const Vec3& q);

// Same projection without the simplex check; the image may leave the simplex
// when the payoffs are small. Throws kAtEquilibrium.
Vec6 RadialProjection(const GameSystem& sys, const Vec6& x);

// Normalized directions of the parallel projections P_A and P_B:
// A'^{-1} 1 / (1' A'^{-1} 1) and A^{-1} 1 / (1' A^{-1} 1).
Vec3 ProjectionDirectionA(const GameSystem& sys);
Vec3 ProjectionDirectionB(const GameSystem& sys);

bool InSimplex(const Vec3& x, double slack);

}  // namespace brlab

#endif  // BRLAB_CORE_GAME_HPP_
