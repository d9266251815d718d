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

#include "core/statistics.hpp"

#include <algorithm>
#include <cmath>

namespace brlab {

Mat3 VisitFrequencies(const std::vector<Label>& itinerary, std::size_t n) {
  if (itinerary.empty()) {
    throw Error(ErrorCode::kInvalidInput, "empty itinerary");
  }
  if (n == 0 || n > itinerary.size()) n = itinerary.size();
  Mat3 q = Mat3::Zero();
  for (std::size_t k = 0; k < n; ++k) q(itinerary[k].row, itinerary[k].col) += 1.0;
  return q / static_cast<double>(n);
}

namespace {

std::size_t Segments(const Orbit& orbit, std::size_t n) {
  const std::size_t total = orbit.durations.size();
  if (total == 0) return 0;
  return (n == 0 || n > total) ? total : n;
}

Mat3 Normalized(const Mat3& m) {
  const double s = m.sum();
  return s > 0.0 ? Mat3(m / s) : m;
}

Mat3 Indicator(Label l) {
  Mat3 m = Mat3::Zero();
  m(l.row, l.col) = 1.0;
  return m;
}

}  // namespace

Mat3 TimeFractions(const Orbit& orbit, TimeParam param, std::size_t n) {
  if (orbit.mode != FlowMode::kBestResponse) {
    throw Error(ErrorCode::kWrongMode,
                "time fractions in BR or FP time need a best-response orbit");
  }
  n = Segments(orbit, n);
  if (n == 0) return Indicator(orbit.itinerary.front());
  Mat3 p = Mat3::Zero();
  if (param == TimeParam::kBestResponse) {
    for (std::size_t k = 0; k < n; ++k) {
      p(orbit.itinerary[k].row, orbit.itinerary[k].col) += orbit.durations[k];
    }
  } else {
    // FP time exp(s); scaled by exp(-s_n) to stay finite.
    const double s_end = orbit.events[n - 1].time;
    for (std::size_t k = 0; k < n; ++k) {
      const double w = std::exp(orbit.events[k].time - s_end) *
                       -std::expm1(-orbit.durations[k]);
      p(orbit.itinerary[k].row, orbit.itinerary[k].col) += w;
    }
  }
  return Normalized(p);
}

Mat3 OwnTimeFractions(const Orbit& orbit, std::size_t n) {
  n = Segments(orbit, n);
  if (n == 0) return Indicator(orbit.itinerary.front());
  Mat3 p = Mat3::Zero();
  for (std::size_t k = 0; k < n; ++k) {
    p(orbit.itinerary[k].row, orbit.itinerary[k].col) += orbit.durations[k];
  }
  return Normalized(p);
}

TransitionTable TransitionFrequencies(const std::vector<Label>& itinerary) {
  TransitionTable t = TransitionTable::Zero();
  for (std::size_t k = 0; k + 1 < itinerary.size(); ++k) {
    t(LabelIndex(itinerary[k]), LabelIndex(itinerary[k + 1])) += 1.0;
  }
  for (int r = 0; r < 9; ++r) {
    const double s = t.row(r).sum();
    if (s > 0.0) t.row(r) /= s;
  }
  return t;
}

std::vector<std::size_t> LogSpacedCounts(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t decade = 1; decade <= n; decade *= 10) {
    for (std::size_t m = 1; m <= 9 && m * decade <= n; ++m) {
      out.push_back(m * decade);
    }
    if (decade > n / 10) break;
  }
  if (n > 0 && (out.empty() || out.back() != n)) out.push_back(n);
  return out;
}

std::vector<TracePoint> ConvergenceTrace(const Orbit& orbit) {
  const std::size_t total = orbit.durations.size();
  std::vector<TracePoint> trace;
  if (total == 0) return trace;
  // One pass with running sums; P(n) and Q(n) both cover the first n segments.
  const auto marks = LogSpacedCounts(total);
  Mat3 p = Mat3::Zero(), q = Mat3::Zero();
  std::size_t next = 0;
  for (std::size_t k = 0; k < total && next < marks.size(); ++k) {
    const Label l = orbit.itinerary[k];
    p(l.row, l.col) += orbit.durations[k];
    q(l.row, l.col) += 1.0;
    if (k + 1 == marks[next]) {
      trace.push_back({k + 1, Normalized(p), q / static_cast<double>(k + 1)});
      ++next;
    }
  }
  return trace;
}

std::optional<Periodicity> DetectPeriodicItinerary(
    const std::vector<Label>& itinerary, std::size_t max_period) {
  const std::size_t n = itinerary.size();
  for (std::size_t p = 1; p <= max_period && 3 * p <= n; ++p) {
    bool ok = true;
    for (std::size_t k = n - 3 * p; k + p < n && ok; ++k) {
      ok = itinerary[k] == itinerary[k + p];
    }
    if (!ok) continue;
    std::size_t start = n - 3 * p;
    while (start > 0 && itinerary[start - 1] == itinerary[start - 1 + p]) {
      --start;
    }
    return Periodicity{start, p};
  }
  return std::nullopt;
}

std::string LeastRotation(const std::string& word) {
  std::string best = word;
  for (std::size_t r = 1; r < word.size(); ++r) {
    std::string rot = word.substr(r) + word.substr(0, r);
    if (rot < best) best = rot;
  }
  return best;
}

std::string DecomposeBlocks(const std::vector<Label>& cycle,
                            const std::vector<NamedBlock>& blocks) {
  const std::size_t n = cycle.size();
  if (n == 0) return {};
  auto at = [&](std::size_t k) { return cycle[k % n]; };
  auto matches = [&](std::size_t pos, const NamedBlock& b) {
    for (std::size_t i = 0; i < b.labels.size(); ++i) {
      if (at(pos + i) != b.labels[i]) return false;
    }
    for (const auto& other : blocks) {
      if (!other.labels.empty() && at(pos + b.labels.size()) == other.labels[0]) {
        return true;
      }
    }
    return false;
  };
  // Try every starting phase; longest matching block first.
  std::vector<const NamedBlock*> order;
  for (const auto& b : blocks) order.push_back(&b);
  std::sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
    return x->labels.size() > y->labels.size();
  });
  for (std::size_t phase = 0; phase < n; ++phase) {
    std::string word;
    std::size_t pos = phase;
    bool ok = true;
    while (pos < phase + n && ok) {
      ok = false;
      for (const auto* b : order) {
        if (!b->labels.empty() && matches(pos, *b)) {
          word.push_back(b->name);
          pos += b->labels.size();
          ok = true;
          break;
        }
      }
    }
    if (ok && pos == phase + n) return LeastRotation(word);
  }
  return {};
}

void StatsAccumulator::Add(const Orbit& orbit) {
  const std::size_t n = orbit.durations.size();
  p_sum += orbit.mode == FlowMode::kBestResponse
               ? TimeFractions(orbit, TimeParam::kBestResponse)
               : OwnTimeFractions(orbit);
  q_sum += VisitFrequencies(orbit.itinerary, n == 0 ? 1 : n);
  for (std::size_t k = 0; k < n; ++k) {
    counts(LabelIndex(orbit.itinerary[k]), LabelIndex(orbit.itinerary[k + 1])) +=
        1.0;
  }
  ++orbits;
}

void StatsAccumulator::Merge(const StatsAccumulator& other) {
  p_sum += other.p_sum;
  q_sum += other.q_sum;
  counts += other.counts;
  orbits += other.orbits;
}

Mat3 StatsAccumulator::MeanP() const {
  return orbits ? Mat3(p_sum / static_cast<double>(orbits)) : Mat3::Zero();
}

Mat3 StatsAccumulator::MeanQ() const {
  return orbits ? Mat3(q_sum / static_cast<double>(orbits)) : Mat3::Zero();
}

TransitionTable StatsAccumulator::Transitions() const {
  TransitionTable t = counts;
  for (int r = 0; r < 9; ++r) {
    const double s = t.row(r).sum();
    if (s > 0.0) t.row(r) /= s;
  }
  return t;
}

}  // namespace brlab
