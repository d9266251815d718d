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

#include "brlab/brlab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <array>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core/common.hpp"
#include "core/diagram.hpp"
#include "core/dynamics.hpp"
#include "core/ensemble.hpp"
#include "core/game.hpp"
#include "core/io.hpp"
#include "core/return_map.hpp"
#include "core/sections.hpp"
#include "core/verify.hpp"

struct brlab_game {
  brlab::GameSystem sys;
};

struct brlab_orbits {
  std::vector<brlab::Orbit> orbits;
  std::vector<uint64_t> seeds;
};

namespace {

using brlab::Error;
using brlab::ErrorCode;

thread_local std::string last_error;

brlab_status StatusOf(ErrorCode code) {
  return static_cast<brlab_status>(static_cast<int>(code) + 1);
}

// Runs fn, translating exceptions into a status and the thread's message.
template <typename Fn>
brlab_status Guard(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return BRLAB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return StatusOf(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BRLAB_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BRLAB_INTERNAL_ERROR;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidInput, what);
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

brlab::Tolerances ParseTolerances(const char* spec) {
  brlab::Tolerances tol;
  if (!spec || !*spec) return tol;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    Require(eq != std::string::npos, "tolerance override must be NAME=VALUE");
    const std::string name = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    Require(!text.empty() && end && *end == '\0', "tolerance value is not a number");
    if (!(value >= 1e-15 && value <= 1e-3)) {
      throw Error(ErrorCode::kInvalidInput,
                  "tolerance " + name + " must lie in [1e-15, 1e-3]");
    }
    if (name == "tie") tol.tie = value;
    else if (name == "simplex") tol.simplex = value;
    else if (name == "interior") tol.interior = value;
    else if (name == "zero_sum") tol.zero_sum = value;
    else if (name == "event_slack") tol.event_slack = value;
    else if (name == "min_step") tol.min_step = value;
    else if (name == "renorm_drift") tol.renorm_drift = value;
    else throw Error(ErrorCode::kInvalidInput, "unknown tolerance " + name);
  }
  return tol;
}

brlab::Mat3 RowMajor(const double* v) {
  brlab::Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = v[3 * r + c];
  return m;
}

const brlab::Orbit& OrbitAt(const brlab_orbits* orbits, size_t index) {
  Require(orbits != nullptr, "orbits is null");
  Require(index < orbits->orbits.size(), "orbit index out of range");
  return orbits->orbits[index];
}

brlab::QpAnalysis Analyze(const brlab_game* game, const char* itinerary, const char* plane) {
  Require(game && itinerary && plane, "null argument");
  return brlab::AnalyzeLoop(game->sys, brlab::ParseItinerary(itinerary),
                            brlab::ParsePlane(plane));
}

}  // namespace

extern "C" {

const char* brlab_version(void) { return "0.1.0"; }

const char* brlab_status_name(brlab_status status) {
  switch (status) {
    case BRLAB_OK: return "Ok";
    case BRLAB_INTERNAL_ERROR: return "InternalError";
    default: break;
  }
  const int code = static_cast<int>(status) - 1;
  if (code < 0 || code > static_cast<int>(ErrorCode::kTheoremViolation)) return "Unknown";
  return brlab::ErrorCodeName(static_cast<ErrorCode>(code));
}

const char* brlab_last_error(void) { return last_error.c_str(); }

void brlab_string_free(char* s) { std::free(s); }

brlab_status brlab_game_from_json(const char* json, const char* tolerances,
                                  brlab_game** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    const brlab::GameSpec spec = brlab::ParseGameJson(json);
    *out = new brlab_game{
        brlab::GameSystem::Validate(spec.a, spec.b, ParseTolerances(tolerances))};
  });
}

brlab_status brlab_game_from_matrix(const double a[9], const double* b,
                                    const char* tolerances, brlab_game** out) {
  return Guard([&] {
    Require(a && out, "null argument");
    std::optional<brlab::Mat3> mb;
    if (b) mb = RowMajor(b);
    *out = new brlab_game{
        brlab::GameSystem::Validate(RowMajor(a), mb, ParseTolerances(tolerances))};
  });
}

void brlab_game_free(brlab_game* game) { delete game; }

brlab_status brlab_game_equilibrium(const brlab_game* game, double out[6]) {
  return Guard([&] {
    Require(game && out, "null argument");
    const brlab::Vec6 e = game->sys.equilibrium();
    for (int i = 0; i < 6; ++i) out[i] = e(i);
  });
}

brlab_status brlab_game_hash(const brlab_game* game, char** out) {
  return Guard([&] {
    Require(game && out, "null argument");
    *out = Dup(brlab::GameHash(game->sys));
  });
}

brlab_status brlab_classify(const brlab_game* game, char** json) {
  return Guard([&] {
    Require(game && json, "null argument");
    *json = Dup(brlab::ClassifyToJson(game->sys, brlab::Classify(game->sys)));
  });
}

brlab_status brlab_enumerate(int realize, uint64_t seed, char** json) {
  return Guard([&] {
    Require(json != nullptr, "null argument");
    const brlab::ClassAtlas& atlas = brlab::SharedAtlas();
    std::vector<std::optional<brlab::Mat3>> found(atlas.classes.size());
    if (realize) {
      for (size_t i = 0; i < atlas.classes.size(); ++i) {
        found[i] = brlab::FindRealization(atlas, atlas.classes[i].id, seed);
      }
    }
    *json = Dup(brlab::AtlasToJson(atlas, found));
  });
}

brlab_status brlab_realize(int class_id, uint64_t seed, uint64_t max_attempts,
                           double a_out[9], uint64_t* attempts_used) {
  return Guard([&] {
    Require(a_out != nullptr, "null argument");
    uint64_t used = 0;
    const brlab::Mat3 a =
        brlab::FindRealization(brlab::SharedAtlas(), class_id, seed, max_attempts, &used);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) a_out[3 * r + c] = a(r, c);
    if (attempts_used) *attempts_used = used;
  });
}

brlab_status brlab_simulate(const brlab_game* game, brlab_mode mode, size_t count,
                            size_t transitions, uint64_t seed, const double* initial,
                            brlab_orbits** out) {
  return Guard([&] {
    Require(game && out, "null argument");
    Require(count > 0, "ensemble size must be positive");
    Require(mode == BRLAB_MODE_HAMILTONIAN || mode == BRLAB_MODE_BEST_RESPONSE,
            "unknown mode");
    brlab::EnsembleOptions opts;
    opts.mode = mode == BRLAB_MODE_HAMILTONIAN ? brlab::FlowMode::kHamiltonian
                                               : brlab::FlowMode::kBestResponse;
    opts.orbits = count;
    opts.transitions = transitions;
    opts.seed = seed;
    if (initial) {
      brlab::Vec6 x;
      for (int i = 0; i < 6; ++i) x(i) = initial[i];
      opts.initial = x;
    }
    auto result = brlab::SimulateEnsemble(game->sys, opts);
    *out = new brlab_orbits{std::move(result.orbits), std::move(result.seeds)};
  });
}

void brlab_orbits_free(brlab_orbits* orbits) { delete orbits; }

size_t brlab_orbits_count(const brlab_orbits* orbits) {
  return orbits ? orbits->orbits.size() : 0;
}

brlab_status brlab_orbit_length(const brlab_orbits* orbits, size_t index, size_t* events) {
  return Guard([&] {
    Require(events != nullptr, "null argument");
    *events = OrbitAt(orbits, index).events.size();
  });
}

brlab_status brlab_orbit_itinerary(const brlab_orbits* orbits, size_t index,
                                   char** labels) {
  return Guard([&] {
    Require(labels != nullptr, "null argument");
    *labels = Dup(brlab::FormatLabels(OrbitAt(orbits, index).itinerary));
  });
}

brlab_status brlab_orbit_event(const brlab_orbits* orbits, size_t index, size_t k,
                               double point[6], double* time) {
  return Guard([&] {
    const brlab::Orbit& o = OrbitAt(orbits, index);
    Require(k < o.events.size(), "event index out of range");
    if (point)
      for (int i = 0; i < 6; ++i) point[i] = o.events[k].point(i);
    if (time) *time = o.events[k].time;
  });
}

brlab_status brlab_orbits_to_jsonl(const brlab_game* game, const brlab_orbits* orbits,
                                   char** jsonl) {
  return Guard([&] {
    Require(game && orbits && jsonl, "null argument");
    std::string text;
    for (size_t i = 0; i < orbits->orbits.size(); ++i) {
      const uint64_t seed = i < orbits->seeds.size() ? orbits->seeds[i] : 0;
      text += brlab::OrbitToJsonl(game->sys, orbits->orbits[i], seed, i);
    }
    *jsonl = Dup(text);
  });
}

brlab_status brlab_orbits_from_jsonl(const char* jsonl, const brlab_game* game,
                                     brlab_orbits** out) {
  return Guard([&] {
    Require(jsonl && out, "null argument");
    auto records = brlab::ParseOrbitJsonl(jsonl);
    Require(!records.empty(), "no orbit records found");
    const std::string hash = game ? brlab::GameHash(game->sys) : std::string();
    auto result = std::make_unique<brlab_orbits>();
    for (auto& r : records) {
      if (game && r.game_hash != hash) {
        throw Error(ErrorCode::kInvalidInput,
                    "orbit was produced by a different game (hash " + r.game_hash + ")");
      }
      result->orbits.push_back(std::move(r.orbit));
      result->seeds.push_back(r.seed);
    }
    *out = result.release();
  });
}

brlab_status brlab_stats(const brlab_orbits* orbits, brlab_time time, char** json) {
  return Guard([&] {
    Require(orbits && json, "null argument");
    Require(!orbits->orbits.empty(), "no orbits");
    const auto param = time == BRLAB_TIME_BEST_RESPONSE ? brlab::TimeParam::kBestResponse
                                                        : brlab::TimeParam::kFictitiousPlay;
    *json = Dup(brlab::StatsToJson(brlab::ComputeStats(orbits->orbits, param)));
  });
}

brlab_status brlab_sections(const brlab_game* game, const brlab_orbits* orbits,
                            const char* plane, char** csv, char** charts_json) {
  return Guard([&] {
    Require(game && orbits, "null argument");
    std::vector<brlab::Plane> planes;
    if (plane) {
      planes.push_back(brlab::ParsePlane(plane));
    } else {
      for (brlab::Side side : {brlab::Side::kA, brlab::Side::kB})
        for (int lo = 0; lo < 3; ++lo)
          for (int hi = lo + 1; hi < 3; ++hi) planes.push_back(brlab::MakePlane(side, lo, hi));
    }
    std::vector<std::pair<brlab::Plane, std::vector<brlab::SectionHit>>> hits;
    std::vector<std::pair<brlab::Plane, std::array<std::optional<brlab::SectionChart>, 3>>>
        charts;
    for (brlab::Plane pl : planes) {
      auto c = brlab::BuildSectionCharts(game->sys, pl);
      std::vector<brlab::SectionHit> all;
      if (csv) {
        for (const auto& o : orbits->orbits) {
          auto h = brlab::SectionHits(game->sys, o, pl, c);
          all.insert(all.end(), h.begin(), h.end());
        }
      }
      hits.emplace_back(pl, std::move(all));
      charts.emplace_back(pl, std::move(c));
    }
    std::string csv_text, charts_text;
    if (csv) csv_text = brlab::SectionsCsv(hits);
    if (charts_json) charts_text = brlab::ChartsToJson(charts);
    if (csv) *csv = Dup(csv_text);
    if (charts_json) *charts_json = Dup(charts_text);
  });
}

brlab_status brlab_detect_qp(const brlab_game* game, const char* itinerary, const char* plane,
                             char** json) {
  return Guard([&] {
    Require(json != nullptr, "null argument");
    *json = Dup(brlab::QpReportToJson(game->sys, Analyze(game, itinerary, plane)));
  });
}

void brlab_scan_options_default(brlab_scan_options* opts) {
  if (!opts) return;
  const brlab::IslandScanOptions d;
  opts->half_width = 0.0;
  opts->grid = d.grid;
  opts->seed = d.seed;
  opts->transitions = d.transitions;
  opts->max_period = d.max_period;
}

brlab_status brlab_scan_islands(const brlab_game* game, const char* itinerary,
                                const char* plane, const brlab_scan_options* opts,
                                char** json) {
  return Guard([&] {
    Require(opts && json, "null argument");
    Require(opts->half_width > 0.0 && std::isfinite(opts->half_width),
            "scan half-width must be positive");
    Require(opts->grid > 0, "scan grid must be positive");
    const brlab::QpAnalysis qp = Analyze(game, itinerary, plane);
    if (!qp.cls.fixed_point) {
      throw Error(ErrorCode::kNoFixedPoint, "loop map has no isolated fixed point");
    }
    brlab::IslandScanOptions o;
    o.center = *qp.cls.fixed_point;
    o.half_width = opts->half_width;
    o.grid = opts->grid;
    o.seed = opts->seed;
    o.transitions = opts->transitions;
    o.max_period = opts->max_period;
    const brlab::IslandScan scan = brlab::ScanIslands(game->sys, qp.loop.chart, o);
    *json = Dup(brlab::IslandScanToJson(qp, o, scan));
  });
}

brlab_status brlab_verify(const brlab_game* game, uint64_t seed, char** json, int* passed) {
  return Guard([&] {
    Require(game && json, "null argument");
    brlab::VerifyOptions opts;
    opts.seed = seed;
    const auto results = brlab::RunPropertySuite(game->sys, opts);
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    *json = Dup(brlab::VerifyToJson(results));
    if (passed) *passed = all ? 1 : 0;
  });
}

}  // extern "C"
