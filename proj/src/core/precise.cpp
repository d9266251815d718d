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

#include "core/precise.hpp"

#include <array>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace brlab {

namespace {

using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<kPreciseDigits>,
    boost::multiprecision::et_off>;
using V3 = std::array<Real, 3>;

struct State {
  V3 p, q;  // displacement from the equilibrium
};

class Engine {
 public:
  explicit Engine(const GameSystem& sys) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m_[i][j] = Real(sys.payoff()(i, j));
    // Adjugate rows / columns summed give the equilibrium up to scale.
    Real adj[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
        const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        adj[i][j] = m_[r0][c0] * m_[r1][c1] - m_[r0][c1] * m_[r1][c0];
      }
    }
    Real sa = 0, sb = 0;
    for (int i = 0; i < 3; ++i) {
      ea_[i] = adj[0][i] + adj[1][i] + adj[2][i];
      eb_[i] = adj[i][0] + adj[i][1] + adj[i][2];
      sa += ea_[i];
      sb += eb_[i];
    }
    for (int i = 0; i < 3; ++i) {
      ea_[i] /= sa;
      eb_[i] /= sb;
    }
  }

  State Displacement(const Vec6& x) const {
    State s;
    for (int i = 0; i < 3; ++i) {
      s.p[i] = Real(x(i)) - ea_[i];
      s.q[i] = Real(x(3 + i)) - eb_[i];
    }
    return s;
  }

  Vec6 Absolute(const State& s) const {
    Vec6 x;
    for (int i = 0; i < 3; ++i) {
      x(i) = static_cast<double>(s.p[i] + ea_[i]);
      x(3 + i) = static_cast<double>(s.q[i] + eb_[i]);
    }
    return x;
  }

  V3 Mq(const State& s) const {
    V3 out;
    for (int i = 0; i < 3; ++i)
      out[i] = m_[i][0] * s.q[0] + m_[i][1] * s.q[1] + m_[i][2] * s.q[2];
    return out;
  }

  V3 PM(const State& s) const {
    V3 out;
    for (int j = 0; j < 3; ++j)
      out[j] = s.p[0] * m_[0][j] + s.p[1] * m_[1][j] + s.p[2] * m_[2][j];
    return out;
  }

  Real Level(const State& s) const {
    const V3 a = Mq(s), b = PM(s);
    return std::max({a[0], a[1], a[2]}) - std::min({b[0], b[1], b[2]});
  }

  State Scaled(const State& s, const Real& f) const {
    State out;
    for (int i = 0; i < 3; ++i) {
      out.p[i] = s.p[i] * f;
      out.q[i] = s.q[i] * f;
    }
    return out;
  }

  Label Region(const State& s) const {
    const V3 a = Mq(s), b = PM(s);
    Label r{0, 0};
    for (int i = 1; i < 3; ++i) {
      if (a[i] > a[r.row]) r.row = i;
      if (b[i] < b[r.col]) r.col = i;
    }
    return r;
  }

  State Velocity(Label r) const {
    State v;
    for (int i = 0; i < 3; ++i) {
      v.p[i] = (i == r.row ? Real(1) : Real(0)) - ea_[i];
      v.q[i] = (i == r.col ? Real(1) : Real(0)) - eb_[i];
    }
    return v;
  }

  struct Hit {
    Label next;
    Real gap, rate;  // gap >= 0 closes at rate < 0 along the velocity
  };

  // Earliest switching plane along direction * velocity; time is gap / -rate.
  Hit Next(const State& s, Label r, int direction) const {
    const V3 a = Mq(s), b = PM(s);
    Hit best{{-1, -1}, 0, 0};
    Real best_t = -1;
    auto consider = [&](Label next, Real gap, Real rate) {
      rate *= direction;
      if (rate >= 0) return;
      if (gap < 0) gap = 0;
      const Real t = gap / -rate;
      if (best_t < 0 || t < best_t) {
        best_t = t;
        best = {next, gap, rate};
      }
    };
    for (int k = 0; k < 3; ++k) {
      if (k == r.row) continue;
      consider({k, r.col}, a[r.row] - a[k], m_[r.row][r.col] - m_[k][r.col]);
    }
    for (int l = 0; l < 3; ++l) {
      if (l == r.col) continue;
      consider({r.row, l}, b[l] - b[r.col], m_[r.row][l] - m_[r.row][r.col]);
    }
    if (best.next.row < 0) {
      throw Error(ErrorCode::kNoCrossing, "no switching plane ahead");
    }
    return best;
  }

  // Straight flight of signed length t along the velocity of r.
  State Flow(const State& s, Label r, const Real& t) const {
    const State v = Velocity(r);
    State out;
    for (int i = 0; i < 3; ++i) {
      out.p[i] = s.p[i] + t * v.p[i];
      out.q[i] = s.q[i] + t * v.q[i];
    }
    return out;
  }

  // Convex step towards the vertex of r: (1 - w) s + w v.
  State Blend(const State& s, Label r, const Real& w) const {
    const State v = Velocity(r);
    State out;
    for (int i = 0; i < 3; ++i) {
      out.p[i] = (1 - w) * s.p[i] + w * v.p[i];
      out.q[i] = (1 - w) * s.q[i] + w * v.q[i];
    }
    return out;
  }

 private:
  Real m_[3][3];
  V3 ea_, eb_;
};

Real MaxDiff(const State& a, const State& b) {
  Real worst = 0;
  for (int i = 0; i < 3; ++i) {
    worst = std::max({worst, abs(a.p[i] - b.p[i]), abs(a.q[i] - b.q[i])});
  }
  return worst;
}

}  // namespace

PreciseOrbit PreciseBestResponse(const GameSystem& sys, const Vec6& x0,
                                 std::size_t transitions) {
  const Engine eng(sys);
  State s = eng.Displacement(x0);
  Label r = eng.Region(s);
  PreciseOrbit out;
  out.itinerary.push_back(r);
  for (std::size_t n = 0; n < transitions; ++n) {
    const auto hit = eng.Next(s, r, 1);
    const Real w = hit.gap / (hit.gap - hit.rate);
    s = eng.Blend(s, r, w);
    r = hit.next;
    out.points.push_back(eng.Absolute(eng.Scaled(s, 1 / eng.Level(s))));
    out.itinerary.push_back(r);
    out.durations.push_back(static_cast<double>(-log(1 - w)));
  }
  return out;
}

PreciseOrbit PreciseHamiltonian(const GameSystem& sys, const Vec6& x0,
                                std::size_t transitions) {
  const Engine eng(sys);
  State s = eng.Displacement(x0);
  s = eng.Scaled(s, 1 / eng.Level(s));
  Label r = eng.Region(s);
  PreciseOrbit out;
  out.itinerary.push_back(r);
  for (std::size_t n = 0; n < transitions; ++n) {
    const auto hit = eng.Next(s, r, 1);
    const Real t = hit.gap / -hit.rate;
    s = eng.Flow(s, r, t);
    r = hit.next;
    out.points.push_back(eng.Absolute(s));
    out.itinerary.push_back(r);
    out.durations.push_back(static_cast<double>(t));
  }
  return out;
}

ConjugacyResult PreciseConjugacy(const GameSystem& sys, const Vec6& x0,
                                 std::size_t transitions) {
  const Engine eng(sys);
  State b = eng.Displacement(x0);
  State h = eng.Scaled(b, 1 / eng.Level(b));
  Label rb = eng.Region(b), rh = eng.Region(h);
  ConjugacyResult res;
  res.itinerary_matches = rb == rh;
  Real worst = 0;
  for (std::size_t n = 0; n < transitions && res.itinerary_matches; ++n) {
    const auto hb = eng.Next(b, rb, 1);
    b = eng.Blend(b, rb, hb.gap / (hb.gap - hb.rate));
    rb = hb.next;
    const auto hh = eng.Next(h, rh, 1);
    h = eng.Flow(h, rh, hh.gap / -hh.rate);
    rh = hh.next;
    res.itinerary_matches = rb == rh;
    worst = std::max(worst, MaxDiff(eng.Scaled(b, 1 / eng.Level(b)), h));
  }
  res.point_error = static_cast<double>(worst);
  return res;
}

ReversalResult PreciseReversal(const GameSystem& sys, const Vec6& x0,
                               std::size_t transitions) {
  const Engine eng(sys);
  State s = eng.Displacement(x0);
  s = eng.Scaled(s, 1 / eng.Level(s));
  std::vector<State> states{s};
  std::vector<Label> regions{eng.Region(s)};
  std::vector<Real> times;
  for (std::size_t n = 0; n < transitions; ++n) {
    const auto hit = eng.Next(states.back(), regions.back(), 1);
    const Real t = hit.gap / -hit.rate;
    states.push_back(eng.Flow(states.back(), regions.back(), t));
    regions.push_back(hit.next);
    times.push_back(t);
  }

  // Backward from the last event through regions[n-1], ..., regions[1]. The
  // final leg through regions[0] has no plane behind x0 to stop at, so it
  // reuses the forward flight time and closes on x0.
  ReversalResult res;
  res.itinerary_matches = true;
  Real worst_point = 0, worst_time = 0;
  State b = states.back();
  for (std::size_t j = transitions; j-- > 1;) {
    const Label r = regions[j];
    const auto hit = eng.Next(b, r, -1);
    if (hit.next != regions[j - 1]) res.itinerary_matches = false;
    const Real t = hit.gap / -hit.rate;
    b = eng.Flow(b, r, -t);
    worst_point = std::max(worst_point, MaxDiff(b, states[j]));
    worst_time = std::max(worst_time, abs(t - times[j]));
  }
  if (transitions > 0) {
    b = eng.Flow(b, regions[0], -times[0]);
    worst_point = std::max(worst_point, MaxDiff(b, states[0]));
  }
  res.point_error = static_cast<double>(worst_point);
  res.duration_error = static_cast<double>(worst_time);
  return res;
}

}  // namespace brlab
