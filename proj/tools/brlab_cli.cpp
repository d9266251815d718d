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

// brlab command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 invalid input, 2 a modelling assumption failed
// (the library error is printed verbatim), 3 the invariant suite failed.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brlab/brlab.h"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitAssumption = 2;
constexpr int kExitInvariant = 3;

// Error carrying the exit code it should produce.
struct Failure : std::runtime_error {
  Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

void Check(brlab_status st) {
  if (st == BRLAB_OK) return;
  const int code = st == BRLAB_INVALID_INPUT ? kExitInvalid
                   : st == BRLAB_THEOREM_VIOLATION ? kExitInvariant
                                                   : kExitAssumption;
  throw Failure(code, brlab_last_error());
}

struct GameDeleter {
  void operator()(brlab_game* g) const { brlab_game_free(g); }
};
struct OrbitsDeleter {
  void operator()(brlab_orbits* o) const { brlab_orbits_free(o); }
};
using GamePtr = std::unique_ptr<brlab_game, GameDeleter>;
using OrbitsPtr = std::unique_ptr<brlab_orbits, OrbitsDeleter>;

// Takes ownership of a library string.
std::string Take(char* s) {
  std::string out = s ? s : "";
  brlab_string_free(s);
  return out;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(kExitInvalid, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure(kExitInvalid, "cannot write " + path);
  out << text;
  if (!out) throw Failure(kExitInvalid, "cannot write " + path);
}

struct Options {
  std::string game, mode = "ham", init = "random", out, plane, itinerary, orbit_in, charts,
              time = "fp", scan_out;
  uint64_t seed = 0;
  std::size_t transitions = 1000, ensemble = 1, max_period = 1000, scan_transitions = 4000;
  std::vector<std::string> tol;
  int class_id = 0, scan_grid = 100;
  uint64_t max_attempts = 10'000'000;
  double scan_width = 0.0;
  bool realize = false;
};

std::string JoinTolerances(const std::vector<std::string>& tol) {
  std::string s;
  for (const auto& t : tol) s += (s.empty() ? "" : ",") + t;
  return s;
}

GamePtr LoadGame(const Options& o) {
  if (o.game.empty()) throw Failure(kExitInvalid, "--game is required");
  brlab_game* g = nullptr;
  const std::string tol = JoinTolerances(o.tol);
  Check(brlab_game_from_json(ReadText(o.game).c_str(), tol.c_str(), &g));
  return GamePtr(g);
}

std::optional<std::vector<double>> ParseInit(const std::string& text) {
  if (text == "random") return std::nullopt;
  std::vector<double> x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      x.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure(kExitInvalid, "--init expects 'random' or p1,p2,p3,q1,q2,q3");
    }
  }
  if (x.size() != 6) throw Failure(kExitInvalid, "--init expects six coordinates");
  return x;
}

OrbitsPtr Simulate(const brlab_game* g, const Options& o) {
  brlab_mode mode;
  if (o.mode == "ham") mode = BRLAB_MODE_HAMILTONIAN;
  else if (o.mode == "br") mode = BRLAB_MODE_BEST_RESPONSE;
  else throw Failure(kExitInvalid, "--mode must be br or ham");
  const auto init = ParseInit(o.init);
  brlab_orbits* orbits = nullptr;
  Check(brlab_simulate(g, mode, o.ensemble, o.transitions, o.seed,
                       init ? init->data() : nullptr, &orbits));
  return OrbitsPtr(orbits);
}

// Orbits from --orbit if given, else simulated from the run flags.
OrbitsPtr ObtainOrbits(const brlab_game* g, const Options& o) {
  if (o.orbit_in.empty()) return Simulate(g, o);
  brlab_orbits* orbits = nullptr;
  Check(brlab_orbits_from_jsonl(ReadText(o.orbit_in).c_str(), g, &orbits));
  return OrbitsPtr(orbits);
}

void AddRunFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "br or ham")->check(CLI::IsMember({"br", "ham"}));
  cmd->add_option("--init", o.init, "random or p1,p2,p3,q1,q2,q3");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--transitions", o.transitions, "transitions per orbit");
  cmd->add_option("--ensemble", o.ensemble, "number of orbits")->check(CLI::PositiveNumber);
}

int Run(int argc, char** argv) {
  CLI::App app{"Best-response dynamics of 3x3 zero-sum games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(brlab_version()));
  Options o;
  auto game_flag = [&](CLI::App* c) { c->add_option("--game", o.game, "game JSON")->required(); };
  auto common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "output path (default stdout)");
    c->add_option("--tol", o.tol, "tolerance override NAME=VALUE")->allow_extra_args(false);
  };

  auto* classify = app.add_subcommand("classify", "transition diagram and class of a game");
  game_flag(classify);
  common(classify);

  auto* enumerate = app.add_subcommand("enumerate", "equivalence classes of diagrams");
  enumerate->add_flag("--realize", o.realize, "attach a realizing matrix to each class");
  enumerate->add_option("--seed", o.seed, "seed for --realize");
  common(enumerate);

  auto* simulate = app.add_subcommand("simulate", "integrate orbits, write JSONL");
  game_flag(simulate);
  AddRunFlags(simulate, o);
  common(simulate);

  auto* stats = app.add_subcommand("stats", "time fractions and transition counts");
  game_flag(stats);
  stats->add_option("--orbit", o.orbit_in, "orbit JSONL (default: simulate)");
  stats->add_option("--time", o.time, "clock for BR orbits: fp or br")
      ->check(CLI::IsMember({"fp", "br"}));
  AddRunFlags(stats, o);
  common(stats);

  auto* sections = app.add_subcommand("sections", "Poincare-section hits as CSV");
  game_flag(sections);
  sections->add_option("--orbit", o.orbit_in, "orbit JSONL (default: simulate)");
  sections->add_option("--plane", o.plane, "SIDE:i,j (default: all six)");
  sections->add_option("--charts", o.charts, "write section charts JSON here");
  AddRunFlags(sections, o);
  common(sections);

  auto* detect = app.add_subcommand("detect-qp", "loop return map of a closed itinerary");
  game_flag(detect);
  detect->add_option("--itinerary", o.itinerary, "labels, e.g. 11,12,22")->required();
  detect->add_option("--plane", o.plane, "base plane SIDE:i,j")->required();
  detect->add_option("--scan-width", o.scan_width,
                     "also scan a square of this half-width for islands");
  detect->add_option("--scan-grid", o.scan_grid, "scan samples per axis");
  detect->add_option("--scan-transitions", o.scan_transitions, "transitions per scan point");
  detect->add_option("--max-period", o.max_period, "longest period detected by the scan");
  detect->add_option("--seed", o.seed, "scan seed");
  detect->add_option("--scan-out", o.scan_out, "island scan JSON path");
  common(detect);

  auto* realize = app.add_subcommand("realize", "integer matrix realizing a class");
  realize->add_option("--class", o.class_id, "class id 1..23")->required();
  realize->add_option("--seed", o.seed, "random seed");
  realize->add_option("--max-attempts", o.max_attempts, "sample budget");
  common(realize);

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  game_flag(verify);
  verify->add_option("--seed", o.seed, "random seed");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  if (*enumerate) {
    char* json = nullptr;
    Check(brlab_enumerate(o.realize ? 1 : 0, o.seed, &json));
    Emit(o.out, Take(json));
    return 0;
  }
  if (*realize) {
    double a[9];
    uint64_t used = 0;
    Check(brlab_realize(o.class_id, o.seed, o.max_attempts, a, &used));
    std::ostringstream os;
    os.precision(17);
    os << "{\"A\": [";
    for (int r = 0; r < 3; ++r) {
      os << (r ? ", [" : "[") << a[3 * r] << ", " << a[3 * r + 1] << ", " << a[3 * r + 2]
         << "]";
    }
    os << "], \"class_id\": " << o.class_id << ", \"attempts\": " << used << "}\n";
    Emit(o.out, os.str());
    return 0;
  }

  const GamePtr game = LoadGame(o);
  if (*classify) {
    char* json = nullptr;
    Check(brlab_classify(game.get(), &json));
    Emit(o.out, Take(json));
  } else if (*simulate) {
    const OrbitsPtr orbits = Simulate(game.get(), o);
    char* text = nullptr;
    Check(brlab_orbits_to_jsonl(game.get(), orbits.get(), &text));
    Emit(o.out, Take(text));
  } else if (*stats) {
    const OrbitsPtr orbits = ObtainOrbits(game.get(), o);
    char* json = nullptr;
    Check(brlab_stats(orbits.get(),
                      o.time == "br" ? BRLAB_TIME_BEST_RESPONSE : BRLAB_TIME_FICTITIOUS_PLAY,
                      &json));
    Emit(o.out, Take(json));
  } else if (*sections) {
    const OrbitsPtr orbits = ObtainOrbits(game.get(), o);
    char* csv = nullptr;
    char* charts = nullptr;
    Check(brlab_sections(game.get(), orbits.get(), o.plane.empty() ? nullptr : o.plane.c_str(),
                         &csv, o.charts.empty() ? nullptr : &charts));
    Emit(o.out, Take(csv));
    if (!o.charts.empty()) Emit(o.charts, Take(charts));
  } else if (*detect) {
    char* json = nullptr;
    Check(brlab_detect_qp(game.get(), o.itinerary.c_str(), o.plane.c_str(), &json));
    Emit(o.out, Take(json));
    if (o.scan_width > 0.0) {
      brlab_scan_options so;
      brlab_scan_options_default(&so);
      so.half_width = o.scan_width;
      so.grid = o.scan_grid;
      so.seed = o.seed;
      so.transitions = o.scan_transitions;
      so.max_period = o.max_period;
      char* scan = nullptr;
      Check(brlab_scan_islands(game.get(), o.itinerary.c_str(), o.plane.c_str(), &so, &scan));
      Emit(o.scan_out.empty() ? "-" : o.scan_out, Take(scan));
    }
  } else if (*verify) {
    char* json = nullptr;
    int passed = 0;
    Check(brlab_verify(game.get(), o.seed, &json, &passed));
    Emit(o.out, Take(json));
    if (!passed) {
      std::cerr << "error: invariant suite failed\n";
      return kExitInvariant;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.what() << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssumption;
  }
}
