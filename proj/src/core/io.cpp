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

#include "core/io.hpp"

#include <cinttypes>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace brlab {

using nlohmann::json;

namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidInput, what);
}

Mat3 ParseMatrix(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 3) Invalid(std::string(name) + " must be 3x3");
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    if (!j[r].is_array() || j[r].size() != 3) {
      Invalid(std::string(name) + " must be 3x3");
    }
    for (int c = 0; c < 3; ++c) {
      if (!j[r][c].is_number()) Invalid(std::string(name) + " entries must be numbers");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

json MatrixJson(const Mat3& m) {
  json j = json::array();
  for (int r = 0; r < 3; ++r) j.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return j;
}

template <typename V>
json VecJson(const V& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

json LabelJson(Label l) { return {l.row + 1, l.col + 1}; }

json PlaneJson(Plane p) {
  return {{"side", p.side == Side::kA ? "A" : "B"}, {"pair", {p.lo + 1, p.hi + 1}}};
}

json PolygonJson(const Polygon& poly) {
  json j = json::array();
  for (const auto& u : poly) j.push_back({u.x(), u.y()});
  return j;
}

void AppendVec3(std::string& out, const Vec3& v) {
  out += '[';
  for (int i = 0; i < 3; ++i) {
    if (i) out += ',';
    out += FormatDouble(v(i));
  }
  out += ']';
}

std::string PlaneText(Plane p) {
  std::string s = "{\"side\":\"";
  s += p.side == Side::kA ? 'A' : 'B';
  s += "\",\"pair\":[" + std::to_string(p.lo + 1) + "," + std::to_string(p.hi + 1) + "]}";
  return s;
}

Label ParseLabelJson(const json& j) {
  if (!j.is_array() || j.size() != 2) Invalid("region must be [i,j]");
  const int r = j[0].get<int>(), c = j[1].get<int>();
  if (r < 1 || r > 3 || c < 1 || c > 3) Invalid("region index out of range");
  return {r - 1, c - 1};
}

Vec3 ParseVec3(const json& j) {
  if (!j.is_array() || j.size() != 3) Invalid("expected 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

GameSpec ParseGameJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    Invalid(std::string("game file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("A")) Invalid("game file needs an \"A\" matrix");
  GameSpec spec;
  spec.a = ParseMatrix(j["A"], "A");
  if (j.contains("B") && !j["B"].is_null()) spec.b = ParseMatrix(j["B"], "B");
  return spec;
}

std::string GameToJson(const GameSpec& spec) {
  json j;
  j["A"] = MatrixJson(spec.a);
  if (spec.b) j["B"] = MatrixJson(*spec.b);
  return j.dump() + "\n";
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string GameHash(const GameSystem& sys) {
  std::string text;
  for (const Mat3* m : {&sys.a(), &sys.b()}) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) text += FormatDouble((*m)(r, c)) + ";";
    }
  }
  uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::vector<Label> ParseItinerary(const std::string& text) {
  // "11,12,22" or "(1,1),(1,2),(2,2)".
  static const std::regex compact(R"(\s*[1-3][1-3](\s*,\s*[1-3][1-3])*\s*)");
  static const std::regex paired(
      R"(\s*\(\s*[1-3]\s*,\s*[1-3]\s*\)(\s*,\s*\(\s*[1-3]\s*,\s*[1-3]\s*\))*\s*)");
  if (!std::regex_match(text, compact) && !std::regex_match(text, paired)) {
    Invalid("itinerary must look like 11,12,22 or (1,1),(1,2),(2,2) with indices 1-3: '" +
            text + "'");
  }
  std::vector<int> digits;
  for (char ch : text) {
    if (ch >= '1' && ch <= '3') digits.push_back(ch - '1');
  }
  std::vector<Label> out;
  for (std::size_t i = 0; i < digits.size(); i += 2) out.push_back({digits[i], digits[i + 1]});
  return out;
}

std::string FormatLabels(const std::vector<Label>& labels) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(labels[i].row + 1) + std::to_string(labels[i].col + 1);
  }
  return s;
}

Plane ParsePlane(const std::string& text) {
  static const std::regex form(R"(\s*([ABab])\s*:\s*([1-3])\s*,\s*([1-3])\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, form)) {
    Invalid("plane must look like A:1,2 or B:2,3: '" + text + "'");
  }
  const int i = m[2].str()[0] - '1', j = m[3].str()[0] - '1';
  if (i == j) Invalid("plane needs two distinct indices");
  const Side side = (m[1] == "A" || m[1] == "a") ? Side::kA : Side::kB;
  return MakePlane(side, i, j);
}

std::string FormatPlane(Plane p) {
  return std::string(p.side == Side::kA ? "A:" : "B:") + std::to_string(p.lo + 1) +
         "," + std::to_string(p.hi + 1);
}

std::string OrbitToJsonl(const GameSystem& sys, const Orbit& orbit,
                         uint64_t seed, std::size_t index) {
  std::string out;
  out.reserve(256 * (orbit.events.size() + 1));
  out += "{\"type\":\"header\",\"mode\":\"";
  out += FlowModeName(orbit.mode);
  out += "\",\"direction\":" + std::to_string(orbit.direction);
  out += ",\"seed\":" + std::to_string(seed);
  out += ",\"index\":" + std::to_string(index);
  out += ",\"game_hash\":\"" + GameHash(sys) + "\"";
  out += ",\"transitions\":" + std::to_string(orbit.events.size());
  out += ",\"renormalizations\":" + std::to_string(orbit.renormalizations);
  out += ",\"max_drift\":" + FormatDouble(orbit.max_drift);
  out += ",\"initial_level\":" + FormatDouble(orbit.initial_level);
  const Label r0 = orbit.itinerary.front();
  out += ",\"region\":[" + std::to_string(r0.row + 1) + "," + std::to_string(r0.col + 1) + "]";
  out += ",\"p\":";
  AppendVec3(out, orbit.initial.head<3>());
  out += ",\"q\":";
  AppendVec3(out, orbit.initial.tail<3>());
  out += "}\n";
  for (std::size_t k = 0; k < orbit.events.size(); ++k) {
    const auto& ev = orbit.events[k];
    out += "{\"k\":" + std::to_string(k);
    out += ",\"t\":" + FormatDouble(ev.time);
    out += ",\"dt\":" + FormatDouble(orbit.durations[k]);
    out += ",\"region\":[" + std::to_string(ev.region.row + 1) + "," +
           std::to_string(ev.region.col + 1) + "]";
    out += ",\"plane\":" + PlaneText(ev.plane);
    out += ",\"p\":";
    AppendVec3(out, ev.point.head<3>());
    out += ",\"q\":";
    AppendVec3(out, ev.point.tail<3>());
    out += "}\n";
  }
  return out;
}

std::vector<OrbitRecord> ParseOrbitJsonl(const std::string& text) {
  std::vector<OrbitRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (j.value("type", "") == "header") {
        OrbitRecord rec;
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "ham") {
          rec.orbit.mode = FlowMode::kHamiltonian;
        } else if (mode == "br") {
          rec.orbit.mode = FlowMode::kBestResponse;
        } else {
          Invalid("unknown mode " + mode);
        }
        rec.orbit.direction = j.value("direction", 1);
        rec.seed = j.value("seed", uint64_t{0});
        rec.index = j.value("index", std::size_t{0});
        rec.game_hash = j.value("game_hash", "");
        rec.orbit.renormalizations = j.value("renormalizations", 0);
        rec.orbit.max_drift = j.value("max_drift", 0.0);
        rec.orbit.initial_level = j.value("initial_level", 1.0);
        rec.orbit.initial = Join(ParseVec3(j.at("p")), ParseVec3(j.at("q")));
        rec.orbit.itinerary.push_back(ParseLabelJson(j.at("region")));
        const std::size_t n = j.value("transitions", std::size_t{0});
        rec.orbit.events.reserve(n);
        rec.orbit.durations.reserve(n);
        rec.orbit.itinerary.reserve(n + 1);
        out.push_back(std::move(rec));
        continue;
      }
      if (out.empty()) Invalid("event record before any header");
      Orbit& o = out.back().orbit;
      if (j.at("k").get<std::size_t>() != o.events.size()) Invalid("event index out of order");
      OrbitEvent ev;
      ev.time = j.at("t").get<double>();
      ev.region = ParseLabelJson(j.at("region"));
      const auto& pl = j.at("plane");
      const std::string side = pl.at("side").get<std::string>();
      if (side != "A" && side != "B") Invalid("plane side must be A or B");
      const int lo = pl.at("pair")[0].get<int>() - 1, hi = pl.at("pair")[1].get<int>() - 1;
      if (lo < 0 || hi > 2 || lo >= hi) Invalid("bad plane pair");
      ev.plane = MakePlane(side == "A" ? Side::kA : Side::kB, lo, hi);
      ev.point = Join(ParseVec3(j.at("p")), ParseVec3(j.at("q")));
      const double prev = o.events.empty() ? 0.0 : o.events.back().time;
      o.durations.push_back(j.contains("dt") ? j["dt"].get<double>() : ev.time - prev);
      o.itinerary.push_back(ev.region);
      o.events.push_back(ev);
    } catch (const json::exception& e) {
      Invalid("orbit line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (out.empty()) Invalid("no orbit header found");
  return out;
}

Mat3 OrbitTimeFractions(const Orbit& orbit, TimeParam time, std::size_t n) {
  if (orbit.mode == FlowMode::kBestResponse) return TimeFractions(orbit, time, n);
  if (time == TimeParam::kBestResponse) {
    throw Error(ErrorCode::kWrongMode,
                "BR-time fractions need a best-response orbit (use --mode br)");
  }
  return OwnTimeFractions(orbit, n);
}

std::vector<TracePoint> TraceFor(const Orbit& orbit, TimeParam time) {
  if (orbit.mode == FlowMode::kHamiltonian || time == TimeParam::kBestResponse) {
    if (orbit.mode == FlowMode::kHamiltonian && time == TimeParam::kBestResponse) {
      OrbitTimeFractions(orbit, time);  // throws kWrongMode
    }
    return ConvergenceTrace(orbit);
  }
  // BR orbit in FP time: segment k lasts exp(s_{k+1}) - exp(s_k).
  std::vector<TracePoint> trace;
  const std::size_t total = orbit.durations.size();
  const auto marks = LogSpacedCounts(total);
  Mat3 p = Mat3::Zero(), q = Mat3::Zero();
  std::size_t next = 0;
  double prev = 1.0;
  for (std::size_t k = 0; k < total && next < marks.size(); ++k) {
    const Label l = orbit.itinerary[k];
    const double now = std::exp(orbit.events[k].time);
    p(l.row, l.col) += now - prev;
    prev = now;
    q(l.row, l.col) += 1.0;
    if (k + 1 == marks[next]) {
      trace.push_back({k + 1, p / p.sum(), q / static_cast<double>(k + 1)});
      ++next;
    }
  }
  return trace;
}

StatsReport ComputeStats(const std::vector<Orbit>& orbits, TimeParam time) {
  if (orbits.empty()) Invalid("no orbits");
  StatsReport r;
  r.time = time;
  r.orbits = orbits.size();
  bool all_br = true;
  Mat3 br_sum = Mat3::Zero();
  TransitionTable counts = TransitionTable::Zero();
  for (const Orbit& o : orbits) {
    const std::size_t n = o.durations.size();
    r.p += OrbitTimeFractions(o, time);
    r.q += VisitFrequencies(o.itinerary, n == 0 ? 1 : n);
    if (o.mode == FlowMode::kBestResponse) {
      br_sum += TimeFractions(o, TimeParam::kBestResponse);
    } else {
      all_br = false;
    }
    for (std::size_t k = 0; k < n; ++k) {
      counts(LabelIndex(o.itinerary[k]), LabelIndex(o.itinerary[k + 1])) += 1.0;
    }
  }
  const double m = static_cast<double>(orbits.size());
  r.p /= m;
  r.q /= m;
  if (all_br) r.p_br_time = Mat3(br_sum / m);
  for (int i = 0; i < 9; ++i) {
    const double s = counts.row(i).sum();
    if (s > 0.0) counts.row(i) /= s;
  }
  r.transitions = counts;
  r.trace = TraceFor(orbits.front(), time);
  return r;
}

std::string StatsToJson(const StatsReport& r) {
  json j;
  j["time"] = r.time == TimeParam::kFictitiousPlay ? "fp" : "br";
  j["orbits"] = r.orbits;
  j["P_BR"] = MatrixJson(r.p);
  j["Q"] = MatrixJson(r.q);
  if (r.p_br_time) j["P_BR_time_s"] = MatrixJson(*r.p_br_time);
  json t = json::array();
  for (int i = 0; i < 9; ++i) {
    json row = json::array();
    for (int c = 0; c < 9; ++c) row.push_back(r.transitions(i, c));
    t.push_back(row);
  }
  j["transitions"] = t;
  json trace = json::array();
  for (const auto& tp : r.trace) {
    trace.push_back({{"n", tp.n}, {"P", MatrixJson(tp.p)}, {"Q", MatrixJson(tp.q)}});
  }
  j["trace"] = trace;
  return j.dump(1) + "\n";
}

std::string SectionsCsv(
    const std::vector<std::pair<Plane, std::vector<SectionHit>>>& hits) {
  std::string out = "plane_side,plane_pair,piece,hit_index,u,v,p1,p2,p3,q1,q2,q3\n";
  for (const auto& [plane, list] : hits) {
    const std::string prefix = std::string(plane.side == Side::kA ? "A" : "B") + "," +
                               std::to_string(plane.lo + 1) + "-" +
                               std::to_string(plane.hi + 1) + ",";
    for (const auto& h : list) {
      out += prefix + std::to_string(h.piece + 1) + "," + std::to_string(h.hit_index);
      out += "," + FormatDouble(h.u.x()) + "," + FormatDouble(h.u.y());
      for (int i = 0; i < 6; ++i) out += "," + FormatDouble(h.x(i));
      out += "\n";
    }
  }
  return out;
}

std::string ChartsToJson(
    const std::vector<std::pair<Plane, std::array<std::optional<SectionChart>, 3>>>& charts) {
  json j = json::array();
  for (const auto& [plane, pieces] : charts) {
    json pj = json::array();
    for (int k = 0; k < 3; ++k) {
      json c;
      c["piece"] = k + 1;
      c["empty"] = !pieces[k].has_value();
      if (pieces[k]) {
        c["origin"] = VecJson(pieces[k]->origin);
        c["basis"] = {VecJson(Vec6(pieces[k]->basis.col(0))),
                      VecJson(Vec6(pieces[k]->basis.col(1)))};
        c["polygon"] = PolygonJson(pieces[k]->polygon);
      }
      pj.push_back(c);
    }
    j.push_back({{"plane", PlaneJson(plane)}, {"pieces", pj}});
  }
  return j.dump(1) + "\n";
}

QpAnalysis AnalyzeLoop(const GameSystem& sys, const std::vector<Label>& loop,
                       Plane plane, std::size_t check_periods) {
  QpAnalysis qp{LoopReturnMap(sys, loop, plane), {}, {}, false, false, std::nullopt};
  qp.cls = ClassifyReturnMap(qp.loop.map);
  qp.domain = ComputeItineraryDomain(sys, qp.loop, qp.cls);
  if (!qp.cls.fixed_point || qp.loop.loop.empty()) return qp;
  const Vec2 u = *qp.cls.fixed_point;
  qp.fixed_point_in_domain =
      !qp.domain.empty &&
      (qp.domain.is_ellipse || Contains(qp.domain.polygon, u, 1e-12));
  const Vec6 x = qp.loop.chart.ToAmbient(u);
  qp.fixed_point_ambient = x;
  const std::size_t n = qp.loop.loop.size();
  try {
    const Orbit o = IntegrateHamiltonianFrom(sys, x, qp.loop.loop[0], n * check_periods);
    bool ok = true;
    for (std::size_t k = 0; k < o.itinerary.size() && ok; ++k) {
      ok = o.itinerary[k] == qp.loop.loop[k % n];
    }
    qp.fixed_point_follows_loop = ok;
  } catch (const Error&) {
    qp.fixed_point_follows_loop = false;
  }
  return qp;
}

std::string QpReportToJson(const GameSystem& sys, const QpAnalysis& qp) {
  (void)sys;
  json j;
  json it = json::array();
  for (Label l : qp.loop.loop) it.push_back(LabelJson(l));
  j["itinerary"] = it;
  j["period"] = qp.loop.loop.size();
  j["plane"] = PlaneJson(qp.loop.chart.plane);
  j["piece"] = qp.loop.chart.piece + 1;
  j["kind"] = ReturnKindName(qp.cls.kind);
  j["order"] = qp.cls.order;
  j["trace"] = qp.cls.trace;
  j["det"] = qp.cls.det;
  j["angle"] = qp.cls.angle;
  j["rotation_number"] = qp.cls.angle / (2.0 * std::numbers::pi);
  j["map"] = {{"M", {{qp.loop.map.m(0, 0), qp.loop.map.m(0, 1)},
                     {qp.loop.map.m(1, 0), qp.loop.map.m(1, 1)}}},
              {"b", VecJson(qp.loop.map.b)}};
  if (qp.cls.fixed_point) {
    json fp;
    fp["u"] = VecJson(*qp.cls.fixed_point);
    if (qp.fixed_point_ambient) {
      fp["p"] = VecJson(Vec3(qp.fixed_point_ambient->head<3>()));
      fp["q"] = VecJson(Vec3(qp.fixed_point_ambient->tail<3>()));
    }
    fp["in_domain"] = qp.fixed_point_in_domain;
    fp["follows_itinerary"] = qp.fixed_point_follows_loop;
    j["fixed_point"] = fp;
  } else {
    j["fixed_point"] = nullptr;
  }
  if (qp.domain.is_ellipse) {
    j["ellipse"] = {{"center", VecJson(qp.domain.center)},
                    {"form", {{qp.domain.form(0, 0), qp.domain.form(0, 1)},
                              {qp.domain.form(1, 0), qp.domain.form(1, 1)}}},
                    {"level", qp.domain.level}};
  } else {
    j["ellipse"] = nullptr;
  }
  j["domain_empty"] = qp.domain.empty;
  j["domain_polygon"] = PolygonJson(qp.domain.polygon);
  j["one_pass_polygon"] = PolygonJson(qp.domain.one_pass);
  j["chart"] = {{"origin", VecJson(qp.loop.chart.origin)},
                {"basis", {VecJson(Vec6(qp.loop.chart.basis.col(0))),
                           VecJson(Vec6(qp.loop.chart.basis.col(1)))}},
                {"polygon", PolygonJson(qp.loop.chart.polygon)}};
  if (!qp.cls.note.empty()) j["note"] = qp.cls.note;
  return j.dump(1) + "\n";
}

std::string IslandScanToJson(const QpAnalysis& qp, const IslandScanOptions& opts,
                             const IslandScan& scan) {
  json j;
  json it = json::array();
  for (Label l : qp.loop.loop) it.push_back(LabelJson(l));
  j["itinerary"] = it;
  j["plane"] = PlaneJson(qp.loop.chart.plane);
  j["piece"] = qp.loop.chart.piece + 1;
  j["window"] = {{"center", VecJson(opts.center)},
                 {"half_width", opts.half_width},
                 {"grid", opts.grid},
                 {"seed", opts.seed},
                 {"transitions", opts.transitions}};
  j["sampled"] = scan.sampled;
  j["simulated"] = scan.simulated;
  j["periodic"] = scan.periodic;
  j["failures"] = scan.failures;
  json islands = json::array();
  for (const auto& is : scan.islands) {
    json c = json::array();
    for (Label l : is.cycle) c.push_back(LabelJson(l));
    islands.push_back({{"period", is.period},
                       {"kind", ReturnKindName(is.cls.kind)},
                       {"order", is.cls.order},
                       {"trace", is.cls.trace},
                       {"angle", is.cls.angle},
                       {"seed_point", VecJson(is.seed_point)},
                       {"hits", is.hits},
                       {"cycle", c}});
  }
  j["islands"] = islands;
  return j.dump(1) + "\n";
}

std::string VerifyToJson(const std::vector<PropertyResult>& results) {
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back({{"name", r.name},
                   {"passed", r.passed},
                   {"worst", r.worst},
                   {"threshold", r.threshold},
                   {"cases", r.cases},
                   {"detail", r.detail}});
  }
  json j{{"passed", all}, {"properties", arr}};
  return j.dump(1) + "\n";
}

ClassifyReport Classify(const GameSystem& sys) {
  ClassifyReport r;
  r.diagram = TransitionDiagram::FromGame(sys);
  r.conditions = CheckConditions(r.diagram);
  r.short_loops = ShortLoops(r.diagram);
  r.canonical = CanonicalForm(r.diagram);
  if (r.conditions.Admissible()) r.class_id = SharedAtlas().ClassOf(r.diagram);
  return r;
}

namespace {

std::string Hex(uint32_t code) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%05x", code);
  return buf;
}

json ArrowsJson(const TransitionDiagram& d) {
  json hor = json::array(), ver = json::array();
  for (int r = 0; r < 3; ++r) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const Label x{r, a}, y{r, b};
        hor.push_back(d.Arrow(x, y) ? json{LabelJson(x), LabelJson(y)}
                                    : json{LabelJson(y), LabelJson(x)});
        const Label u{a, r}, v{b, r};
        ver.push_back(d.Arrow(u, v) ? json{LabelJson(u), LabelJson(v)}
                                    : json{LabelJson(v), LabelJson(u)});
      }
    }
  }
  return {{"horizontal", hor}, {"vertical", ver}};
}

}  // namespace

std::string ClassifyToJson(const GameSystem& sys, const ClassifyReport& r) {
  json j;
  j["diagram_code"] = r.diagram.code();
  j["diagram_hex"] = Hex(r.diagram.code());
  j["arrows"] = ArrowsJson(r.diagram);
  const auto& c = r.conditions;
  json cond;
  cond["1_no_three_cycles"] = c.Condition1();
  cond["2_no_dominated"] = c.Condition2();
  cond["3_no_sinks"] = c.Condition3();
  cond["4_no_sources"] = c.Condition4();
  cond["5_no_alternating_cycles"] = c.Condition5();
  j["conditions"] = cond;
  j["admissible"] = c.Admissible();
  json detail;
  detail["row_cycles"] = {c.row_cycle[0], c.row_cycle[1], c.row_cycle[2]};
  detail["col_cycles"] = {c.col_cycle[0], c.col_cycle[1], c.col_cycle[2]};
  json dr = json::array(), dc = json::array(), sinks = json::array(),
       sources = json::array(), alt = json::array();
  for (auto [a, b] : c.dominated_rows) dr.push_back({a + 1, b + 1});
  for (auto [a, b] : c.dominated_cols) dc.push_back({a + 1, b + 1});
  for (Label l : c.sinks) sinks.push_back(LabelJson(l));
  for (Label l : c.sources) sources.push_back(LabelJson(l));
  for (const auto& w : c.alternating_cycles) {
    json cyc = json::array();
    for (Label l : w) cyc.push_back(LabelJson(l));
    alt.push_back(cyc);
  }
  detail["dominated_rows"] = dr;
  detail["dominated_cols"] = dc;
  detail["sinks"] = sinks;
  detail["sources"] = sources;
  detail["alternating_cycles"] = alt;
  j["condition_details"] = detail;
  j["short_loops"] = r.short_loops.size();
  json loops = json::array();
  for (const auto& l : r.short_loops) {
    loops.push_back({{"rows", {l.row_lo + 1, l.row_hi + 1}},
                     {"cols", {l.col_lo + 1, l.col_hi + 1}},
                     {"orientation", l.clockwise ? "cw" : "ccw"},
                     {"center", LabelJson(l.center)}});
  }
  j["loops"] = loops;
  j["canonical_code"] = Hex(r.canonical);
  j["class_id"] = r.class_id;
  const auto& n = sys.nash();
  j["nash"] = {{"eA", VecJson(n.ea)}, {"eB", VecJson(n.eb)}, {"value", n.value}};
  return j.dump(1) + "\n";
}

std::string AtlasToJson(const ClassAtlas& atlas,
                        const std::vector<std::optional<Mat3>>& realizations) {
  json j;
  j["bit_layout"] =
      "bit 3*row+pair: horizontal arrow in row, set = (row,lo)->(row,hi); "
      "bit 9+3*col+pair: vertical arrow in col, set = (lo,col)->(hi,col); "
      "pair 0={1,2}, 1={1,3}, 2={2,3}; rows and cols zero-based";
  j["class_count"] = atlas.classes.size();
  j["raw_admissible"] = atlas.raw_admissible;
  j["cond1_only_failures"] = atlas.cond1_only_failures;
  json dist = json::object();
  for (const auto& c : atlas.classes) {
    const std::string key = std::to_string(c.short_loops);
    dist[key] = dist.value(key, 0) + 1;
  }
  j["short_loop_distribution"] = dist;
  json classes = json::array();
  for (std::size_t i = 0; i < atlas.classes.size(); ++i) {
    const auto& c = atlas.classes[i];
    json e;
    e["classId"] = c.id;
    e["canonicalCode"] = Hex(c.canonical_code);
    e["shortLoops"] = c.short_loops;
    e["representative"] = c.canonical_code;
    e["rawCount"] = c.raw_count;
    if (i < realizations.size() && realizations[i]) {
      json m = json::array();
      for (int r = 0; r < 3; ++r) {
        m.push_back({static_cast<int>((*realizations[i])(r, 0)),
                     static_cast<int>((*realizations[i])(r, 1)),
                     static_cast<int>((*realizations[i])(r, 2))});
      }
      e["realization"] = m;
    } else {
      e["realization"] = nullptr;
    }
    classes.push_back(e);
  }
  j["classes"] = classes;
  return j.dump(1) + "\n";
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Invalid("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Invalid("cannot write " + path);
  out << content;
  if (!out) Invalid("write failed for " + path);
}

}  // namespace brlab
