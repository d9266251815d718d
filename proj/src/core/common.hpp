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

#ifndef BRLAB_CORE_COMMON_HPP_
#define BRLAB_CORE_COMMON_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace brlab {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// A phase point is stored as one 6-vector (p; q): p = x.head<3>() is the
// mixed strategy of player A (row player), q = x.tail<3>() that of player B.
inline Vec6 Join(const Vec3& p, const Vec3& q) {
  Vec6 x;
  x << p, q;
  return x;
}

enum class ErrorCode {
  kInvalidInput,
  kDegenerateMatrix,
  kNotZeroSumEquivalent,
  kNoInteriorEquilibrium,
  kAtEquilibrium,
  kOutsideSimplex,
  kOnIndifferencePlane,
  kNoCrossing,
  kDegenerateCrossing,
  kConvergedToEquilibrium,
  kParallelFlow,
  kIllegalLoop,
  kWrongMode,
  kEmptyPiece,
  kNoFixedPoint,
  kRealizationNotFound,
  kTheoremViolation,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}
  Error(ErrorCode code, const std::string& what, const Vec6& state)
      : Error(code, what) {
    state_ = state;
  }

  ErrorCode code() const { return code_; }
  // Phase point at which a dynamics error was raised, when there is one.
  const std::optional<Vec6>& state() const { return state_; }

 private:
  ErrorCode code_;
  std::optional<Vec6> state_;
};

// Numerical thresholds. Everything compared against payoffs is relative to
// scale(A) = max |a_ij|.
struct Tolerances {
  double tie = 1e-9;             // best-response tie band, relative
  double simplex = 1e-12;        // simplex membership slack, absolute
  double interior = 1e-9;        // equilibrium interiority, absolute
  double zero_sum = 1e-9;        // linear-equivalence residual, relative
  double max_condition = 1e12;   // reject payoff matrices beyond this
  double event_slack = 1e-12;    // relative gap between candidate hit times
  double min_step = 1e-14;       // smallest accepted flight time
  double renorm_drift = 1e-12;   // |H - level| that triggers renormalization
  int renorm_interval = 1000;    // renormalize at least this often (events)
};

// Region label R_ij: row = BR_A value i, col = BR_B value j. Zero-based in
// code; one-based in every file format and on the command line.
struct Label {
  int row = 0;
  int col = 0;
  auto operator<=>(const Label&) const = default;
};

inline int LabelIndex(Label l) { return 3 * l.row + l.col; }
inline Label LabelFromIndex(int idx) { return {idx / 3, idx % 3}; }

// Indifference plane. Side A: (Aq)_lo = (Aq)_hi, BR_A switches and p turns.
// Side B: (pA)_lo = (pA)_hi, BR_B switches and q turns.
enum class Side { kA, kB };

struct Plane {
  Side side = Side::kA;
  int lo = 0;
  int hi = 1;
  auto operator<=>(const Plane&) const = default;
};

inline Plane MakePlane(Side side, int i, int j) {
  return i < j ? Plane{side, i, j} : Plane{side, j, i};
}

// Plane crossed by the transition from -> to; the labels must differ in
// exactly one index.
std::optional<Plane> TransitionPlane(Label from, Label to);

// Third index of {0,1,2} not in {a,b}.
inline int Other(int a, int b) { return 3 - a - b; }

}  // namespace brlab

#endif  // BRLAB_CORE_COMMON_HPP_
