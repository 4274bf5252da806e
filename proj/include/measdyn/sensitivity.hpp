#pragma once

// Sensitivity time sets N_d(x, eps, delta) = { n >= 1 : some y with
// d(x,y) < eps has d(f_0^n(x), f_0^n(y)) > delta }, at a finite horizon, on
// the base space and on measures. Asymptotic classifications (cofinite,
// syndetic, ergodic) degrade to finite-horizon descriptors: a present suffix,
// the maximal gap, and the density at the horizon.

#include <vector>

#include "measdyn/prohorov.hpp"
#include "measdyn/systems.hpp"

namespace measdyn {

struct TimeSet {
  long horizon = 0;
  std::vector<long> members;       // sorted, within [1, horizon]
  bool cofinite_at_horizon = false;
  long suffix_start = 0;           // least s with [s, horizon] all present; horizon+1 if none
  long max_gap = 0;                // over gaps between consecutive members, plus the
                                   // leading gap from 0 and the trailing gap to horizon+1
  double density = 0.0;            // |members| / horizon
};

inline TimeSet make_time_set(std::vector<long> members, long horizon) {
  if (horizon < 1) throw Error("time set needs horizon >= 1");
  std::sort(members.begin(), members.end());
  TimeSet t;
  t.horizon = horizon;
  t.members = std::move(members);
  t.suffix_start = horizon + 1;
  for (std::size_t i = t.members.size(); i-- > 0;) {
    const long expect = horizon - static_cast<long>(t.members.size() - 1 - i);
    if (t.members[i] != expect) break;
    t.suffix_start = t.members[i];
  }
  t.cofinite_at_horizon = t.suffix_start <= horizon;
  long prev = 0;
  for (const long m : t.members) {
    t.max_gap = std::max(t.max_gap, m - prev);
    prev = m;
  }
  t.max_gap = std::max(t.max_gap, horizon + 1 - prev);
  t.density = static_cast<double>(t.members.size()) / static_cast<double>(horizon);
  return t;
}

// Base level. Candidates default to the whole eps-ball around x; an explicit
// candidate list is filtered to the ball and must leave something.
inline TimeSet sensitivity_times(const SystemDef& sys, int x, const Rat& eps,
                                 const Rat& delta, long horizon,
                                 const std::vector<int>& candidates = {}) {
  if (horizon < 1) throw Error("sensitivity needs horizon >= 1");
  const MetricSpace& space = *sys.space;
  std::vector<int> ball;
  if (candidates.empty()) {
    for (int y = 0; y < space.size(); ++y)
      if (space.dist(x, y) < eps) ball.push_back(y);
  } else {
    for (const int y : candidates)
      if (space.dist(x, y) < eps) ball.push_back(y);
  }
  if (ball.empty()) throw Error("ball empty at this resolution");

  std::vector<long> members;
  int xt = x;
  std::vector<int> yt = ball;
  for (long n = 1; n <= horizon; ++n) {
    xt = apply(space, sys.map_at(n - 1), xt);
    bool separated = false;
    for (int& y : yt) {
      y = apply(space, sys.map_at(n - 1), y);
      separated = separated || space.dist(xt, y) > delta;
    }
    if (separated) members.push_back(n);
  }
  return make_time_set(std::move(members), horizon);
}

// Measure level, over an explicit candidate set (the measure ball is infinite
// even over a finite space, so this is a sampled lower bound of the true set).
inline TimeSet measure_sensitivity_times(const SystemDef& sys, const DiscreteMeasure& mu0,
                                         const Rat& eps, const Rat& delta, long horizon,
                                         const std::vector<DiscreteMeasure>& candidates) {
  if (horizon < 1) throw Error("sensitivity needs horizon >= 1");
  std::vector<DiscreteMeasure> ball;
  for (const DiscreteMeasure& nu : candidates)
    if (prohorov_fast(mu0, nu) < eps) ball.push_back(nu);
  if (ball.empty()) throw Error("ball empty at this resolution");

  std::vector<long> members;
  DiscreteMeasure mt = mu0;
  for (long n = 1; n <= horizon; ++n) {
    mt = push_step(sys, mt, n - 1);
    bool separated = false;
    for (DiscreteMeasure& nu : ball) {
      nu = push_step(sys, nu, n - 1);
      separated = separated || prohorov_fast(mt, nu) > delta;
    }
    if (separated) members.push_back(n);
  }
  return make_time_set(std::move(members), horizon);
}

inline bool time_set_subset(const TimeSet& a, const TimeSet& b) {
  for (const long m : a.members)
    if (!std::binary_search(b.members.begin(), b.members.end(), m)) return false;
  return true;
}

}  // namespace measdyn
