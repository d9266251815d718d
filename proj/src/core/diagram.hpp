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

#ifndef BRLAB_CORE_DIAGRAM_HPP_
#define BRLAB_CORE_DIAGRAM_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace brlab {

class GameSystem;

// Transition diagram on the 3x3 grid of regions, packed into 18 bits.
//
// Pairs of indices are numbered 0 = {0,1}, 1 = {0,2}, 2 = {1,2}.
//   bit 3*row + pair       (0..8):  horizontal arrow in `row`; set means
//                                   (row, lo) -> (row, hi).
//   bit 9 + 3*col + pair   (9..17): vertical arrow in `col`; set means
//                                   (lo, col) -> (hi, col).
class TransitionDiagram {
 public:
  static constexpr int kBits = 18;
  static constexpr uint32_t kCount = 1u << kBits;

  TransitionDiagram() = default;
  explicit TransitionDiagram(uint32_t code) : code_(code & (kCount - 1)) {}

  static TransitionDiagram FromGame(const GameSystem& sys);

  uint32_t code() const { return code_; }
  // True iff from -> to is an arrow. The cells must share a row or column.
  bool Arrow(Label from, Label to) const;

  bool operator==(const TransitionDiagram&) const = default;

 private:
  uint32_t code_ = 0;
};

int PairIndex(int a, int b);
int HorizontalBit(int row, int c1, int c2);
int VerticalBit(int col, int r1, int r2);

// Element of the 72-element symmetry group: optional transposition (swap the
// players), then independent permutations of rows and columns.
struct DiagramTransform {
  bool transpose = false;
  std::array<int, 3> row_perm{0, 1, 2};
  std::array<int, 3> col_perm{0, 1, 2};

  Label Apply(Label l) const;
};

const std::array<DiagramTransform, 72>& AllTransforms();
TransitionDiagram Transform(const TransitionDiagram& d,
                            const DiagramTransform& t);

struct ShortLoop {
  int row_lo, row_hi;
  int col_lo, col_hi;
  // Clockwise: (row_lo,col_lo) -> (row_lo,col_hi) -> (row_hi,col_hi) ->
  // (row_hi,col_lo) with rows drawn top to bottom.
  bool clockwise;
  // The grid face enclosed by the loop, named by the complementary row and
  // column (a bijection between the nine faces and the nine cells).
  Label center;
};

struct ConditionReport {
  std::array<bool, 3> row_cycle{};  // condition 1, horizontal 3-cycles
  std::array<bool, 3> col_cycle{};  // condition 1, vertical 3-cycles
  // Condition 2 as (dominated, dominating) index pairs.
  std::vector<std::pair<int, int>> dominated_rows;
  std::vector<std::pair<int, int>> dominated_cols;
  std::vector<Label> sinks;    // condition 3
  std::vector<Label> sources;  // condition 4
  // Condition 5: each witness is a closed alternating walk, first cell not
  // repeated at the end.
  std::vector<std::vector<Label>> alternating_cycles;

  bool Condition1() const;
  bool Condition2() const;
  bool Condition3() const { return sinks.empty(); }
  bool Condition4() const { return sources.empty(); }
  bool Condition5() const { return alternating_cycles.empty(); }
  bool Admissible() const {
    return Condition1() && Condition2() && Condition3() && Condition4() &&
           Condition5();
  }
};

ConditionReport CheckConditions(const TransitionDiagram& d);

// Cheap admissibility test used by the enumeration; equals
// CheckConditions(d).Admissible().
bool IsAdmissible(const TransitionDiagram& d);
bool HasAlternatingCycle(const TransitionDiagram& d);

// True iff `cells` is a closed walk whose moves alternate between rows and
// columns and follow horizontal arrows forward and vertical arrows backward.
bool IsAlternatingWitness(const TransitionDiagram& d,
                          const std::vector<Label>& cells);

std::vector<ShortLoop> ShortLoops(const TransitionDiagram& d);
int CountShortLoops(const TransitionDiagram& d);

uint32_t CanonicalForm(const TransitionDiagram& d);

struct DiagramClass {
  int id = 0;  // 1-based, ordered by (short loops, canonical code)
  uint32_t canonical_code = 0;
  int short_loops = 0;
  uint64_t raw_count = 0;
};

struct ClassAtlas {
  std::vector<DiagramClass> classes;
  uint64_t raw_admissible = 0;
  // Diagrams passing conditions 2-5 but failing condition 1.
  uint64_t cond1_only_failures = 0;
  // Class id (1-based) of every admissible raw code, 0 elsewhere.
  std::vector<uint8_t> class_of;

  const DiagramClass& ByCode(uint32_t canonical) const;
  int ClassOf(const TransitionDiagram& d) const { return class_of[d.code()]; }
};

// Full enumeration of all 2^18 diagrams. Throws Error(kTheoremViolation) if
// the quotient is not 23 classes split 2/15/5/1 by short-loop count.
ClassAtlas EnumerateClasses();

// Process-wide atlas, computed on first use.
const ClassAtlas& SharedAtlas();

// Rejection-samples integer matrices in [-99, 99] until (A, -A) validates
// and its diagram falls in `class_id`. Deterministic in `seed`.
Mat3 FindRealization(const ClassAtlas& atlas, int class_id, uint64_t seed,
                     uint64_t max_attempts = 10'000'000,
                     uint64_t* attempts_used = nullptr);

std::string ToDot(const TransitionDiagram& d, const std::string& name);

}  // namespace brlab

#endif  // BRLAB_CORE_DIAGRAM_HPP_
