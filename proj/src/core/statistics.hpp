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

// Empirical statistics of itineraries and orbits: visit frequencies Q, time
// fractions P, transition tables, periodicity detection.

#ifndef BRLAB_CORE_STATISTICS_HPP_
#define BRLAB_CORE_STATISTICS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/dynamics.hpp"

namespace brlab {

using TransitionTable = Eigen::Matrix<double, 9, 9>;

// Q(n): share of the first n labels equal to each (i, j). n = 0 means all.
Mat3 VisitFrequencies(const std::vector<Label>& itinerary, std::size_t n = 0);

enum class TimeParam {
  kBestResponse,       // BR time s
  kFictitiousPlay,     // FP time t = exp(s)
};

// P(n): share of time spent in each region over the first n segments of a
// best-response orbit. Throws kWrongMode for Hamiltonian orbits.
Mat3 TimeFractions(const Orbit& orbit, TimeParam param, std::size_t n = 0);

// Time fractions in the orbit's own clock. For Hamiltonian orbits this is
// the flow time on H = 1, which agrees with FP time up to an affine change.
Mat3 OwnTimeFractions(const Orbit& orbit, std::size_t n = 0);

// Row-normalized counts of consecutive label pairs, indexed by 3i + j.
TransitionTable TransitionFrequencies(const std::vector<Label>& itinerary);

// n = 1, 2, ..., 9, 10, 20, ..., capped at `n`, always ending in n.
std::vector<std::size_t> LogSpacedCounts(std::size_t n);

struct TracePoint {
  std::size_t n = 0;
  Mat3 p = Mat3::Zero();
  Mat3 q = Mat3::Zero();
};

// P(n) and Q(n) at log-spaced n. P is the BR-time fraction for BR orbits and
// the own-time fraction for Hamiltonian orbits.
std::vector<TracePoint> ConvergenceTrace(const Orbit& orbit);

struct Periodicity {
  std::size_t preperiod = 0;
  std::size_t period = 0;
};

// Smallest p <= max_period whose last 3p labels repeat with period p; the
// preperiod is the first index from which the repetition holds.
std::optional<Periodicity> DetectPeriodicItinerary(
    const std::vector<Label>& itinerary, std::size_t max_period);

// Parses a cyclic label sequence into named blocks. Each block is a label
// path; a match must be followed by the first label of some block. Returns
// the block names, rotated to the lexicographically least rotation, or empty
// if no parse exists.
struct NamedBlock {
  char name;
  std::vector<Label> labels;
};
std::string DecomposeBlocks(const std::vector<Label>& cycle,
                            const std::vector<NamedBlock>& blocks);

std::string LeastRotation(const std::string& word);

// Mergeable sums for ensembles: means of P, Q and transition counts.
struct StatsAccumulator {
  Mat3 p_sum = Mat3::Zero();
  Mat3 q_sum = Mat3::Zero();
  TransitionTable counts = TransitionTable::Zero();
  std::size_t orbits = 0;

  void Add(const Orbit& orbit);
  void Merge(const StatsAccumulator& other);
  Mat3 MeanP() const;
  Mat3 MeanQ() const;
  TransitionTable Transitions() const;
};

}  // namespace brlab

#endif  // BRLAB_CORE_STATISTICS_HPP_
