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

#include "core/diagram.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "core/game.hpp"
#include "core/parallel.hpp"

namespace brlab {

int PairIndex(int a, int b) {
  const int lo = std::min(a, b), hi = std::max(a, b);
  return lo == 0 ? hi - 1 : 2;
}

int HorizontalBit(int row, int c1, int c2) { return 3 * row + PairIndex(c1, c2); }
int VerticalBit(int col, int r1, int r2) {
  return 9 + 3 * col + PairIndex(r1, r2);
}

bool TransitionDiagram::Arrow(Label from, Label to) const {
  if (from.row == to.row && from.col != to.col) {
    const bool bit = (code_ >> HorizontalBit(from.row, from.col, to.col)) & 1u;
    return bit == (from.col < to.col);
  }
  if (from.col == to.col && from.row != to.row) {
    const bool bit = (code_ >> VerticalBit(from.col, from.row, to.row)) & 1u;
    return bit == (from.row < to.row);
  }
  return false;
}

TransitionDiagram TransitionDiagram::FromGame(const GameSystem& sys) {
  const Mat3& a = sys.a();
  const Mat3& b = sys.b();
  uint32_t code = 0;
  for (int k = 0; k < 3; ++k) {
    for (int lo = 0; lo < 3; ++lo) {
      for (int hi = lo + 1; hi < 3; ++hi) {
        // Row k, (k,lo) -> (k,hi) iff b_{k,hi} > b_{k,lo}.
        if (b(k, hi) > b(k, lo)) code |= 1u << HorizontalBit(k, lo, hi);
        // Column k, (lo,k) -> (hi,k) iff a_{hi,k} > a_{lo,k}.
        if (a(hi, k) > a(lo, k)) code |= 1u << VerticalBit(k, lo, hi);
      }
    }
  }
  return TransitionDiagram(code);
}

Label DiagramTransform::Apply(Label l) const {
  if (transpose) std::swap(l.row, l.col);
  return {row_perm[l.row], col_perm[l.col]};
}

namespace {

struct BitMap {
  std::array<uint8_t, 18> src{};
  uint32_t flip = 0;
};

// Adjacent cell pair (lo end, hi end) encoded by a bit.
std::pair<Label, Label> BitCells(int bit) {
  if (bit < 9) {
    const int row = bit / 3, pair = bit % 3;
    const int lo = pair == 2 ? 1 : 0, hi = pair == 0 ? 1 : 2;
    return {{row, lo}, {row, hi}};
  }
  const int col = (bit - 9) / 3, pair = (bit - 9) % 3;
  const int lo = pair == 2 ? 1 : 0, hi = pair == 0 ? 1 : 2;
  return {{lo, col}, {hi, col}};
}

int BitOf(Label x, Label y) {
  return x.row == y.row ? HorizontalBit(x.row, x.col, y.col)
                        : VerticalBit(x.col, x.row, y.row);
}

bool IsLoEnd(Label x, Label y) {
  return x.row == y.row ? x.col < y.col : x.row < y.row;
}

BitMap MakeBitMap(const DiagramTransform& t) {
  std::array<Label, 9> pre{};
  for (int idx = 0; idx < 9; ++idx) {
    const Label old = LabelFromIndex(idx);
    pre[LabelIndex(t.Apply(old))] = old;
  }
  BitMap m;
  for (int nb = 0; nb < 18; ++nb) {
    const auto [c1, c2] = BitCells(nb);
    const Label x = pre[LabelIndex(c1)], y = pre[LabelIndex(c2)];
    // New bit set iff old arrow x -> y, i.e. old bit XOR (x is the hi end).
    m.src[nb] = static_cast<uint8_t>(BitOf(x, y));
    if (!IsLoEnd(x, y)) m.flip |= 1u << nb;
  }
  return m;
}

const std::array<BitMap, 72>& BitMaps() {
  static const std::array<BitMap, 72> maps = [] {
    std::array<BitMap, 72> out{};
    const auto& ts = AllTransforms();
    for (int i = 0; i < 72; ++i) out[i] = MakeBitMap(ts[i]);
    return out;
  }();
  return maps;
}

uint32_t ApplyBitMap(const BitMap& m, uint32_t code) {
  uint32_t out = 0;
  for (int nb = 0; nb < 18; ++nb) out |= ((code >> m.src[nb]) & 1u) << nb;
  return out ^ m.flip;
}

// Alternating walks: horizontal arrows followed forward, vertical arrows
// backward, move types alternating. States are (cell, type of last move),
// index 2*cell + (last move vertical ? 1 : 0). Reversing the horizontal
// family instead yields the same closed walks traversed backwards, so one
// reversal covers both kinds.
std::array<uint32_t, 18> AlternatingStateGraph(const TransitionDiagram& d) {
  std::array<uint32_t, 18> adj{};
  for (int idx = 0; idx < 9; ++idx) {
    const Label c = LabelFromIndex(idx);
    for (int other = 0; other < 3; ++other) {
      if (other != c.col) {
        const Label n{c.row, other};
        if (d.Arrow(c, n)) adj[2 * idx + 1] |= 1u << (2 * LabelIndex(n));
      }
      if (other != c.row) {
        const Label n{other, c.col};
        if (d.Arrow(n, c)) adj[2 * idx] |= 1u << (2 * LabelIndex(n) + 1);
      }
    }
  }
  return adj;
}

}  // namespace

const std::array<DiagramTransform, 72>& AllTransforms() {
  static const std::array<DiagramTransform, 72> all = [] {
    std::array<DiagramTransform, 72> out{};
    std::array<int, 3> rp{0, 1, 2};
    int n = 0;
    for (bool tr : {false, true}) {
      rp = {0, 1, 2};
      do {
        std::array<int, 3> cp{0, 1, 2};
        do {
          out[n++] = DiagramTransform{tr, rp, cp};
        } while (std::next_permutation(cp.begin(), cp.end()));
      } while (std::next_permutation(rp.begin(), rp.end()));
    }
    return out;
  }();
  return all;
}

TransitionDiagram Transform(const TransitionDiagram& d,
                            const DiagramTransform& t) {
  return TransitionDiagram(ApplyBitMap(MakeBitMap(t), d.code()));
}

bool ConditionReport::Condition1() const {
  return std::none_of(row_cycle.begin(), row_cycle.end(), [](bool b) { return b; }) &&
         std::none_of(col_cycle.begin(), col_cycle.end(), [](bool b) { return b; });
}

bool ConditionReport::Condition2() const {
  return dominated_rows.empty() && dominated_cols.empty();
}

namespace {

// Three arrows on {0,1,2} given as bits for pairs {0,1},{0,2},{1,2} (set
// means lo -> hi) form a directed 3-cycle.
bool IsThreeCycle(unsigned b01, unsigned b02, unsigned b12) {
  return (b01 && b12 && !b02) || (!b01 && !b12 && b02);
}

void FindSinksSources(const TransitionDiagram& d, std::vector<Label>* sinks,
                      std::vector<Label>* sources) {
  for (int idx = 0; idx < 9; ++idx) {
    const Label c = LabelFromIndex(idx);
    int in = 0, out = 0;
    for (int o = 0; o < 3; ++o) {
      if (o != c.col) (d.Arrow({c.row, o}, c) ? in : out)++;
      if (o != c.row) (d.Arrow({o, c.col}, c) ? in : out)++;
    }
    if (in == 4 && sinks) sinks->push_back(c);
    if (out == 4 && sources) sources->push_back(c);
  }
}

}  // namespace

ConditionReport CheckConditions(const TransitionDiagram& d) {
  ConditionReport r;
  const uint32_t code = d.code();
  auto bit = [code](int b) { return (code >> b) & 1u; };
  for (int k = 0; k < 3; ++k) {
    r.row_cycle[k] = IsThreeCycle(bit(3 * k), bit(3 * k + 1), bit(3 * k + 2));
    r.col_cycle[k] =
        IsThreeCycle(bit(9 + 3 * k), bit(9 + 3 * k + 1), bit(9 + 3 * k + 2));
  }
  for (int lo = 0; lo < 3; ++lo) {
    for (int hi = lo + 1; hi < 3; ++hi) {
      int down = 0, right = 0;
      for (int k = 0; k < 3; ++k) {
        down += static_cast<int>(bit(VerticalBit(k, lo, hi)));
        right += static_cast<int>(bit(HorizontalBit(k, lo, hi)));
      }
      // All arrows lo -> hi: the lo row (column) is dominated.
      if (down == 3) r.dominated_rows.emplace_back(lo, hi);
      if (down == 0) r.dominated_rows.emplace_back(hi, lo);
      if (right == 3) r.dominated_cols.emplace_back(lo, hi);
      if (right == 0) r.dominated_cols.emplace_back(hi, lo);
    }
  }
  FindSinksSources(d, &r.sinks, &r.sources);

  // Depth-first search over the 18-state graph; every back edge closes a
  // witness walk.
  const auto adj = AlternatingStateGraph(d);
  std::array<int, 18> color{};
  std::vector<int> stack;
  std::vector<std::vector<Label>> found;
  auto dfs = [&](auto&& self, int s) -> void {
    color[s] = 1;
    stack.push_back(s);
    for (int t = 0; t < 18; ++t) {
      if (!((adj[s] >> t) & 1u)) continue;
      if (color[t] == 1) {
        std::vector<Label> cyc;
        auto it = std::find(stack.begin(), stack.end(), t);
        for (; it != stack.end(); ++it) cyc.push_back(LabelFromIndex(*it / 2));
        found.push_back(std::move(cyc));
      } else if (color[t] == 0) {
        self(self, t);
      }
    }
    stack.pop_back();
    color[s] = 2;
  };
  for (int s = 0; s < 18; ++s) {
    if (color[s] == 0) dfs(dfs, s);
  }
  r.alternating_cycles = std::move(found);
  return r;
}

bool HasAlternatingCycle(const TransitionDiagram& d) {
  auto reach = AlternatingStateGraph(d);
  for (int k = 0; k < 18; ++k) {
    for (int i = 0; i < 18; ++i) {
      if ((reach[i] >> k) & 1u) reach[i] |= reach[k];
    }
  }
  for (int i = 0; i < 18; ++i) {
    if ((reach[i] >> i) & 1u) return true;
  }
  return false;
}

bool IsAlternatingWitness(const TransitionDiagram& d,
                          const std::vector<Label>& cells) {
  const size_t n = cells.size();
  if (n < 4 || n % 2 != 0) return false;
  int prev_type = -1;
  for (size_t k = 0; k < n; ++k) {
    const Label a = cells[k], b = cells[(k + 1) % n];
    int type;
    if (a.row == b.row && a.col != b.col) {
      if (!d.Arrow(a, b)) return false;
      type = 0;
    } else if (a.col == b.col && a.row != b.row) {
      if (!d.Arrow(b, a)) return false;
      type = 1;
    } else {
      return false;
    }
    if (type == prev_type) return false;
    prev_type = type;
  }
  return true;
}

bool IsAdmissible(const TransitionDiagram& d) {
  const uint32_t code = d.code();
  auto bit = [code](int b) { return (code >> b) & 1u; };
  for (int k = 0; k < 3; ++k) {
    if (IsThreeCycle(bit(3 * k), bit(3 * k + 1), bit(3 * k + 2))) return false;
    if (IsThreeCycle(bit(9 + 3 * k), bit(10 + 3 * k), bit(11 + 3 * k))) {
      return false;
    }
  }
  for (int lo = 0; lo < 3; ++lo) {
    for (int hi = lo + 1; hi < 3; ++hi) {
      int down = 0, right = 0;
      for (int k = 0; k < 3; ++k) {
        down += static_cast<int>(bit(VerticalBit(k, lo, hi)));
        right += static_cast<int>(bit(HorizontalBit(k, lo, hi)));
      }
      if (down == 0 || down == 3 || right == 0 || right == 3) return false;
    }
  }
  std::vector<Label> sinks, sources;
  FindSinksSources(d, &sinks, &sources);
  if (!sinks.empty() || !sources.empty()) return false;
  return !HasAlternatingCycle(d);
}

std::vector<ShortLoop> ShortLoops(const TransitionDiagram& d) {
  std::vector<ShortLoop> loops;
  for (int r1 = 0; r1 < 3; ++r1) {
    for (int r2 = r1 + 1; r2 < 3; ++r2) {
      for (int c1 = 0; c1 < 3; ++c1) {
        for (int c2 = c1 + 1; c2 < 3; ++c2) {
          const Label tl{r1, c1}, tr{r1, c2}, br{r2, c2}, bl{r2, c1};
          const Label center{Other(r1, r2), Other(c1, c2)};
          if (d.Arrow(tl, tr) && d.Arrow(tr, br) && d.Arrow(br, bl) &&
              d.Arrow(bl, tl)) {
            loops.push_back({r1, r2, c1, c2, true, center});
          } else if (d.Arrow(tr, tl) && d.Arrow(br, tr) && d.Arrow(bl, br) &&
                     d.Arrow(tl, bl)) {
            loops.push_back({r1, r2, c1, c2, false, center});
          }
        }
      }
    }
  }
  return loops;
}

int CountShortLoops(const TransitionDiagram& d) {
  return static_cast<int>(ShortLoops(d).size());
}

uint32_t CanonicalForm(const TransitionDiagram& d) {
  uint32_t best = TransitionDiagram::kCount;
  for (const auto& m : BitMaps()) best = std::min(best, ApplyBitMap(m, d.code()));
  return best;
}

const DiagramClass& ClassAtlas::ByCode(uint32_t canonical) const {
  for (const auto& c : classes) {
    if (c.canonical_code == canonical) return c;
  }
  throw Error(ErrorCode::kInvalidInput, "canonical code is not admissible");
}

ClassAtlas EnumerateClasses() {
  constexpr uint32_t kN = TransitionDiagram::kCount;
  // canonical[c] for admissible c, kN otherwise; cond1 failures counted per
  // chunk so the merge is deterministic.
  std::vector<uint32_t> canonical(kN, kN);
  const int chunks = 64;
  std::vector<uint64_t> cond1_only(chunks, 0);
  ParallelFor(chunks, [&](size_t chunk) {
    const uint32_t begin = static_cast<uint32_t>(chunk) * (kN / chunks);
    const uint32_t end = begin + kN / chunks;
    for (uint32_t code = begin; code < end; ++code) {
      const TransitionDiagram d(code);
      if (IsAdmissible(d)) {
        canonical[code] = CanonicalForm(d);
        continue;
      }
      const ConditionReport r = CheckConditions(d);
      if (!r.Condition1() && r.Condition2() && r.Condition3() &&
          r.Condition4() && r.Condition5()) {
        ++cond1_only[chunk];
      }
    }
  });

  std::map<uint32_t, DiagramClass> by_code;
  ClassAtlas atlas;
  for (uint32_t code = 0; code < kN; ++code) {
    if (canonical[code] == kN) continue;
    ++atlas.raw_admissible;
    auto& cls = by_code[canonical[code]];
    if (cls.raw_count == 0) {
      cls.canonical_code = canonical[code];
      cls.short_loops = CountShortLoops(TransitionDiagram(canonical[code]));
    } else if (cls.short_loops != CountShortLoops(TransitionDiagram(code))) {
      throw Error(ErrorCode::kTheoremViolation,
                  "short-loop count is not constant on a class");
    }
    ++cls.raw_count;
  }
  for (uint64_t c : cond1_only) atlas.cond1_only_failures += c;

  for (const auto& [code, cls] : by_code) atlas.classes.push_back(cls);
  std::sort(atlas.classes.begin(), atlas.classes.end(),
            [](const DiagramClass& x, const DiagramClass& y) {
              return std::tie(x.short_loops, x.canonical_code) <
                     std::tie(y.short_loops, y.canonical_code);
            });
  std::array<int, 7> per_loops{};
  for (size_t i = 0; i < atlas.classes.size(); ++i) {
    atlas.classes[i].id = static_cast<int>(i) + 1;
    const int sl = atlas.classes[i].short_loops;
    if (sl < 0 || sl > 6) {
      throw Error(ErrorCode::kTheoremViolation, "short-loop count out of range");
    }
    ++per_loops[sl];
  }
  if (atlas.classes.size() != 23 || per_loops[3] != 2 || per_loops[4] != 15 ||
      per_loops[5] != 5 || per_loops[6] != 1) {
    std::ostringstream os;
    os << atlas.classes.size() << " classes, by short loops 3..6: "
       << per_loops[3] << "/" << per_loops[4] << "/" << per_loops[5] << "/"
       << per_loops[6];
    throw Error(ErrorCode::kTheoremViolation, os.str());
  }

  atlas.class_of.assign(kN, 0);
  for (uint32_t code = 0; code < kN; ++code) {
    if (canonical[code] != kN) {
      atlas.class_of[code] =
          static_cast<uint8_t>(atlas.ByCode(canonical[code]).id);
    }
  }
  return atlas;
}

const ClassAtlas& SharedAtlas() {
  static const ClassAtlas atlas = EnumerateClasses();
  return atlas;
}

namespace {

// Diagram of (A, -A) straight from integer entries; nullopt on ties.
std::optional<uint32_t> ZeroSumDiagramCode(const std::array<int, 9>& a) {
  uint32_t code = 0;
  for (int k = 0; k < 3; ++k) {
    for (int lo = 0; lo < 3; ++lo) {
      for (int hi = lo + 1; hi < 3; ++hi) {
        const int row_lo = a[3 * k + lo], row_hi = a[3 * k + hi];
        const int col_lo = a[3 * lo + k], col_hi = a[3 * hi + k];
        if (row_lo == row_hi || col_lo == col_hi) return std::nullopt;
        // b = -a: (k,lo) -> (k,hi) iff a_{k,lo} > a_{k,hi}.
        if (row_lo > row_hi) code |= 1u << HorizontalBit(k, lo, hi);
        if (col_hi > col_lo) code |= 1u << VerticalBit(k, lo, hi);
      }
    }
  }
  return code;
}

}  // namespace

Mat3 FindRealization(const ClassAtlas& atlas, int class_id, uint64_t seed,
                     uint64_t max_attempts, uint64_t* attempts_used) {
  if (class_id < 1 || class_id > static_cast<int>(atlas.classes.size())) {
    throw Error(ErrorCode::kInvalidInput,
                "class id must be in 1.." + std::to_string(atlas.classes.size()));
  }
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ull * static_cast<uint64_t>(class_id)));
  std::uniform_int_distribution<int> entry(-99, 99);
  std::array<int, 9> a{};
  for (uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    for (int& x : a) x = entry(rng);
    const auto code = ZeroSumDiagramCode(a);
    if (!code || atlas.class_of[*code] != class_id) continue;
    Mat3 m;
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = a[i];
    try {
      GameSystem::Validate(m);
    } catch (const Error&) {
      continue;
    }
    if (attempts_used) *attempts_used = attempt;
    return m;
  }
  throw Error(ErrorCode::kRealizationNotFound,
              "class " + std::to_string(class_id) + " after " +
                  std::to_string(max_attempts) + " samples");
}

std::string ToDot(const TransitionDiagram& d, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  node [shape=circle];\n";
  for (int idx = 0; idx < 9; ++idx) {
    const Label c = LabelFromIndex(idx);
    os << "  c" << c.row + 1 << c.col + 1 << " [label=\"" << c.row + 1 << ","
       << c.col + 1 << "\", pos=\"" << c.col << "," << 2 - c.row << "!\"];\n";
  }
  for (int bit = 0; bit < 18; ++bit) {
    const auto [lo, hi] = BitCells(bit);
    const bool forward = (d.code() >> bit) & 1u;
    const Label from = forward ? lo : hi, to = forward ? hi : lo;
    os << "  c" << from.row + 1 << from.col + 1 << " -> c" << to.row + 1
       << to.col + 1 << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace brlab
