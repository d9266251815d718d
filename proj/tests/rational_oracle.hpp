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

// Exact rational arithmetic used as an independent oracle for the
// double-precision code.

#ifndef BRLAB_TESTS_RATIONAL_ORACLE_HPP_
#define BRLAB_TESTS_RATIONAL_ORACLE_HPP_

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <utility>

#include "core/common.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Q3 = std::array<Q, 3>;
using QMat = std::array<std::array<Q, 3>, 3>;

inline QMat FromInts(const brlab::Mat3& m) {
  QMat out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = Q(static_cast<long long>(m(i, j)));
  return out;
}

// Solves M y = c 1 with 1'y = 1 by Gauss-Jordan elimination on the bordered
// 4x4 system [M -1; 1' 0] (y, c) = (0, 1).
inline Q3 IndifferentMix(const QMat& m) {
  std::array<std::array<Q, 5>, 4> a{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a[i][j] = m[i][j];
    a[i][3] = -1;
    a[i][4] = 0;
  }
  for (int j = 0; j < 3; ++j) a[3][j] = 1;
  a[3][3] = 0;
  a[3][4] = 1;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    for (int r = 0; r < 4; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Q f = a[r][c] / a[c][c];
      for (int k = c; k < 5; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return {a[0][4] / a[0][0], a[1][4] / a[1][1], a[2][4] / a[2][2]};
}

inline QMat Transposed(const QMat& m) {
  QMat t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

inline double ToDouble(const Q& q) { return static_cast<double>(q); }

}  // namespace oracle

#endif  // BRLAB_TESTS_RATIONAL_ORACLE_HPP_
