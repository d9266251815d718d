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

// File formats: game JSON, orbit JSONL, stats/qp/atlas JSON, sections CSV.
// Floating-point fields in JSONL and CSV use 17 significant digits.

#ifndef BRLAB_CORE_IO_HPP_
#define BRLAB_CORE_IO_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/diagram.hpp"
#include "core/dynamics.hpp"
#include "core/game.hpp"
#include "core/return_map.hpp"
#include "core/sections.hpp"
#include "core/statistics.hpp"
#include "core/verify.hpp"

namespace brlab {

struct GameSpec {
  Mat3 a = Mat3::Zero();
  std::optional<Mat3> b;
};

// {"A": [[..],[..],[..]], "B": optional}. Throws kInvalidInput.
GameSpec ParseGameJson(const std::string& text);
std::string GameToJson(const GameSpec& spec);

// FNV-1a over the 17-digit text of A and B, as 16 hex digits.
std::string GameHash(const GameSystem& sys);

std::string FormatDouble(double x);

// "11,12,22" or "(1,1),(1,2)" style label lists, one-based.
std::vector<Label> ParseItinerary(const std::string& text);
std::string FormatLabels(const std::vector<Label>& labels);

// "A:1,2" / "B:2,3", one-based.
Plane ParsePlane(const std::string& text);
std::string FormatPlane(Plane plane);

struct OrbitRecord {
  Orbit orbit;
  uint64_t seed = 0;
  std::size_t index = 0;
  std::string game_hash;
};

// One header line, then one line per event.
std::string OrbitToJsonl(const GameSystem& sys, const Orbit& orbit,
                         uint64_t seed, std::size_t index);
// Inverse of OrbitToJsonl; several orbits may be concatenated. Throws
// kInvalidInput.
std::vector<OrbitRecord> ParseOrbitJsonl(const std::string& text);

struct StatsReport {
  TimeParam time = TimeParam::kFictitiousPlay;
  std::size_t orbits = 0;
  Mat3 p = Mat3::Zero();
  Mat3 q = Mat3::Zero();
  std::optional<Mat3> p_br_time;  // BR-time fractions, BR orbits only
  TransitionTable transitions = TransitionTable::Zero();
  std::vector<TracePoint> trace;  // of the first orbit
};

// P in the requested clock for any orbit: FP time for Hamiltonian orbits is
// their own flow time.
Mat3 OrbitTimeFractions(const Orbit& orbit, TimeParam time, std::size_t n = 0);
std::vector<TracePoint> TraceFor(const Orbit& orbit, TimeParam time);

StatsReport ComputeStats(const std::vector<Orbit>& orbits, TimeParam time);
std::string StatsToJson(const StatsReport& report);

std::string SectionsCsv(const std::vector<std::pair<Plane, std::vector<SectionHit>>>& hits);
std::string ChartsToJson(
    const std::vector<std::pair<Plane, std::array<std::optional<SectionChart>, 3>>>& charts);

struct QpAnalysis {
  LoopMap loop;
  ReturnMapClass cls;
  ItineraryDomain domain;
  // The fixed point, lifted and simulated for `check_periods` periods.
  bool fixed_point_in_domain = false;
  bool fixed_point_follows_loop = false;
  std::optional<Vec6> fixed_point_ambient;
};

QpAnalysis AnalyzeLoop(const GameSystem& sys, const std::vector<Label>& loop,
                       Plane plane, std::size_t check_periods = 20);
std::string QpReportToJson(const GameSystem& sys, const QpAnalysis& qp);

std::string IslandScanToJson(const QpAnalysis& qp, const IslandScanOptions& opts,
                             const IslandScan& scan);

std::string VerifyToJson(const std::vector<PropertyResult>& results);

struct ClassifyReport {
  TransitionDiagram diagram;
  ConditionReport conditions;
  std::vector<ShortLoop> short_loops;
  uint32_t canonical = 0;
  int class_id = 0;
};
ClassifyReport Classify(const GameSystem& sys);
std::string ClassifyToJson(const GameSystem& sys, const ClassifyReport& r);

// realizations[i] belongs to atlas.classes[i]; may be empty.
std::string AtlasToJson(const ClassAtlas& atlas,
                        const std::vector<std::optional<Mat3>>& realizations);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& content);

}  // namespace brlab

#endif  // BRLAB_CORE_IO_HPP_
