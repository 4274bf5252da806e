#pragma once

// Proximality / distributional statistics for a pair of orbits: the distance
// sequence d_i over i in [1, horizon], its extremes, and lower/upper running
// densities of {i : d_i < t} taken over the window [ceil(horizon/2), horizon]
// (a finite-horizon stand-in for liminf/limsup).

#include <vector>

#include "measdyn/prohorov.hpp"
#include "measdyn/systems.hpp"

namespace measdyn {

struct DensityRow {
  Rat threshold;
  double lower = 0.0;  // min over the window of |{i <= n : d_i < t}| / n
  double upper = 0.0;  // max over the window
};

struct PairStats {
  long horizon = 0;
  std::vector<Rat> dists;  // dists[i-1] = distance at time i
  Rat min_dist;
  Rat max_dist;
  std::vector<DensityRow> densities;

  bool li_yorke_candidate(const Rat& tol, const Rat& delta) const {
    return min_dist < tol && max_dist > delta;
  }
};

inline PairStats pair_stats_from_dists(std::vector<Rat> dists,
                                       const std::vector<Rat>& thresholds) {
  if (dists.empty()) throw Error("pair statistics need horizon >= 1");
  PairStats st;
  st.horizon = static_cast<long>(dists.size());
  st.dists = std::move(dists);
  st.min_dist = st.dists[0];
  st.max_dist = st.dists[0];
  for (const Rat& d : st.dists) {
    st.min_dist = rat_min(st.min_dist, d);
    st.max_dist = rat_max(st.max_dist, d);
  }
  const long window_start = (st.horizon + 1) / 2;
  for (const Rat& t : thresholds) {
    DensityRow row;
    row.threshold = t;
    long hits = 0;
    bool first = true;
    for (long n = 1; n <= st.horizon; ++n) {
      if (st.dists[static_cast<std::size_t>(n - 1)] < t) ++hits;
      if (n < window_start) continue;
      const double dn = static_cast<double>(hits) / static_cast<double>(n);
      if (first || dn < row.lower) row.lower = dn;
      if (first || dn > row.upper) row.upper = dn;
      first = false;
    }
    st.densities.push_back(row);
  }
  return st;
}

inline PairStats pair_stats(const SystemDef& sys, int x, int y, long horizon,
                            const std::vector<Rat>& thresholds) {
  if (horizon < 1) throw Error("pair statistics need horizon >= 1");
  const MetricSpace& space = *sys.space;
  std::vector<Rat> dists;
  dists.reserve(static_cast<std::size_t>(horizon));
  int xt = x, yt = y;
  for (long i = 1; i <= horizon; ++i) {
    xt = apply(space, sys.map_at(i - 1), xt);
    yt = apply(space, sys.map_at(i - 1), yt);
    dists.push_back(space.dist(xt, yt));
  }
  return pair_stats_from_dists(std::move(dists), thresholds);
}

inline PairStats measure_pair_stats(const SystemDef& sys, const DiscreteMeasure& mu,
                                    const DiscreteMeasure& nu, long horizon,
                                    const std::vector<Rat>& thresholds) {
  if (horizon < 1) throw Error("pair statistics need horizon >= 1");
  std::vector<Rat> dists;
  dists.reserve(static_cast<std::size_t>(horizon));
  DiscreteMeasure mt = mu, nt = nu;
  for (long i = 1; i <= horizon; ++i) {
    mt = push_step(sys, mt, i - 1);
    nt = push_step(sys, nt, i - 1);
    dists.push_back(prohorov_metric(mt, nt));
  }
  return pair_stats_from_dists(std::move(dists), thresholds);
}

}  // namespace measdyn
