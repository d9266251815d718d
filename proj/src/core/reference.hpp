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

// The four reference games used throughout the tests and the property suite.

#ifndef BRLAB_CORE_REFERENCE_HPP_
#define BRLAB_CORE_REFERENCE_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace brlab::reference {

inline Mat3 Example1() {
  Mat3 a;
  a << 22, 34, -4, 7, -32, 16, -53, 96, 23;
  return a;
}

inline Mat3 Example2() {
  const double s = (std::sqrt(5.0) - 1.0) / 2.0;
  Mat3 a;
  a << 1, 0, s, s, 1, 0, 0, s, 1;
  return a;
}

inline Mat3 Example3() {
  Mat3 a;
  a << 84, -37, 10, 24, 33, -14, -26, 9, 20;
  return a;
}

inline Mat3 Example4() {
  Mat3 a;
  a << -92, 18, 52, 62, -37, -33, -10, 9, -18;
  return a;
}

// Labels written as two digits, one-based: 12 is (1,2).
inline std::vector<Label> Labels(std::initializer_list<int> digits) {
  std::vector<Label> out;
  for (int d : digits) out.push_back({d / 10 - 1, d % 10 - 1});
  return out;
}

inline std::vector<Label> Example2Loop() { return Labels({11, 12, 22, 23, 33, 31}); }

inline std::vector<Label> Example3Loop() {
  return Labels({11, 12, 22, 23, 33, 31, 11, 12, 32, 22, 23, 33, 31});
}

inline std::vector<Label> Example4BlockA() { return Labels({11, 31, 21, 22, 32, 33, 13}); }
inline std::vector<Label> Example4BlockB() {
  return Labels({11, 31, 21, 22, 32, 33, 13, 12});
}

inline std::vector<Label> Example4Loop() {
  std::vector<Label> out;
  for (char c : std::string("aababbab")) {
    const auto block = c == 'a' ? Example4BlockA() : Example4BlockB();
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

}  // namespace brlab::reference

#endif  // BRLAB_CORE_REFERENCE_HPP_
