#pragma once

// Exact Prohorov distance between finitely supported measures, one-sided
// form: P(mu, nu) = inf { eps > 0 : mu(A) <= nu(A^eps) + eps for all A },
// with the open fattening A^eps = {x : d(x, A) < eps}. Symmetry of this
// one-sided value is a theorem, not an assumption; the test suite checks it.
//
// Both solvers scan the same structure. For fixed A, nu(A^eps) is a
// left-continuous step function of eps whose jumps sit on distances from
// supp(nu) to A, so the feasible set {eps : mu(A) - nu(A^eps) <= eps} is an
// upward-closed interval whose left endpoint lies on a breakpoint or on a
// mass deficit value. The infimum over all A is therefore found by scanning
// breakpoint intervals:
//
//   bruteforce  enumerates every subset A of supp(mu) (the worst A is always
//               a subset of supp(mu)); exponential, capped, used as oracle
//   fast        for eps fixed, max_A [mu(A) - nu(A^eps)] is a maximum-weight
//               closure problem on the bipartite graph supp(mu) -> supp(nu)
//               with edges where d < eps, solved exactly by min cut; the
//               candidate scan over breakpoint intervals then finds
//               inf { eps : worst violation <= eps }
//
// All capacities and cut values are rational, so fast == bruteforce exactly.
//
// The _core variants take atom weights plus a distance matrix directly, so
// the same solvers serve measures on grid spaces and exact rational atoms on
// the real line.

#include <algorithm>
#include <queue>
#include <vector>

#include "measdyn/measure.hpp"

namespace measdyn {

namespace detail {

// Max flow (Edmonds-Karp) with exact rational capacities on a tiny graph.
class RatMaxFlow {
 public:
  explicit RatMaxFlow(int n) : head_(n, -1) {}

  void add_edge(int from, int to, const Rat& cap) {
    edges_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], Rat(0)});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  Rat run(int s, int t) {
    Rat flow(0);
    while (true) {
      std::vector<int> via(head_.size(), -1);
      std::queue<int> bfs;
      bfs.push(s);
      via[s] = -2;
      while (!bfs.empty() && via[t] == -1) {
        const int u = bfs.front();
        bfs.pop();
        for (int e = head_[u]; e != -1; e = edges_[e].next) {
          const int v = edges_[e].to;
          if (via[v] == -1 && edges_[e].cap > 0) {
            via[v] = e;
            bfs.push(v);
          }
        }
      }
      if (via[t] == -1) return flow;
      Rat push = edges_[via[t]].cap;
      for (int v = t; v != s; v = edges_[via[v] ^ 1].to)
        push = rat_min(push, edges_[via[v]].cap);
      for (int v = t; v != s; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].cap -= push;
        edges_[via[v] ^ 1].cap += push;
      }
      flow += push;
    }
  }

 private:
  struct Edge {
    int to;
    int next;
    Rat cap;
  };
  std::vector<Edge> edges_;
  std::vector<int> head_;
};

// Shared candidate scan. Given sorted distinct boundaries b_0 = 0 < b_1 < ...
// and the constant violation V_k of the condition on the interval
// (b_k, b_{k+1}], returns the left endpoint of the upward-closed feasible set
// {eps : V(eps) <= eps}. The last interval is unbounded above.
inline Rat feasibility_left_endpoint(const std::vector<Rat>& bounds,
                                     const std::vector<Rat>& violation) {
  bool have = false;
  Rat best;
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    const Rat& v = violation[k];
    Rat cand;
    if (v <= bounds[k])
      cand = bounds[k];
    else if (k + 1 == bounds.size() || v <= bounds[k + 1])
      cand = v;
    else
      continue;
    if (!have || cand < best) {
      have = true;
      best = cand;
    }
  }
  if (!have) throw Error("no feasible radius; measures are not both probability measures");
  return best;
}

inline void check_same_space(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.space_ptr() != nu.space_ptr())
    throw Error("Prohorov distance needs both measures on one space");
}

inline std::vector<std::vector<Rat>> atom_distance_matrix(const DiscreteMeasure& mu,
                                                          const DiscreteMeasure& nu) {
  const auto& ma = mu.atoms();
  const auto& na = nu.atoms();
  std::vector<std::vector<Rat>> d(ma.size(), std::vector<Rat>(na.size()));
  for (std::size_t i = 0; i < ma.size(); ++i)
    for (std::size_t j = 0; j < na.size(); ++j)
      d[i][j] = mu.space().dist(ma[i].point, na[j].point);
  return d;
}

}  // namespace detail

// Subset-enumeration oracle. Exponential in the first support; refuses above
// the cap. d[i][j] is the distance between atom i of the first measure and
// atom j of the second.
inline Rat prohorov_bruteforce_core(const std::vector<Rat>& wa, const std::vector<Rat>& wb,
                                    const std::vector<std::vector<Rat>>& d,
                                    int support_cap = 16) {
  const int m = static_cast<int>(wa.size());
  const int n = static_cast<int>(wb.size());
  if (m > support_cap)
    throw Error("bruteforce oracle capped at support size " + std::to_string(support_cap) +
                "; use prohorov_fast");

  Rat worst(0);
  std::vector<std::pair<Rat, Rat>> dist_mass(n);  // (distance to A, nu weight)
  for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
    Rat mass_a(0);
    for (int i = 0; i < m; ++i)
      if (mask & (1UL << i)) mass_a += wa[i];

    for (int j = 0; j < n; ++j) {
      bool first = true;
      Rat dj;
      for (int i = 0; i < m; ++i) {
        if (!(mask & (1UL << i))) continue;
        if (first || d[i][j] < dj) {
          dj = d[i][j];
          first = false;
        }
      }
      dist_mass[j] = {dj, wb[j]};
    }
    std::sort(dist_mass.begin(), dist_mass.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // Boundaries 0 = b_0 < distinct distances; violation on (b_k, b_{k+1}]
    // is mass_a minus the nu mass within distance <= b_k.
    std::vector<Rat> bounds{Rat(0)};
    std::vector<Rat> violation{mass_a};  // nothing is strictly closer than eps <= first distance
    Rat covered(0);
    std::size_t j = 0;
    while (j < dist_mass.size()) {
      const Rat at = dist_mass[j].first;
      Rat here(0);
      while (j < dist_mass.size() && dist_mass[j].first == at) {
        here += dist_mass[j].second;
        ++j;
      }
      covered += here;
      if (at == 0) {
        violation.back() = mass_a - covered;
        continue;
      }
      bounds.push_back(at);
      violation.push_back(mass_a - covered);
    }
    worst = rat_max(worst, detail::feasibility_left_endpoint(bounds, violation));
  }
  return worst;
}

// Min-cut solver, equal to the oracle on every input.
inline Rat prohorov_fast_core(const std::vector<Rat>& wa, const std::vector<Rat>& wb,
                              const std::vector<std::vector<Rat>>& d) {
  const int m = static_cast<int>(wa.size());
  const int n = static_cast<int>(wb.size());

  std::vector<Rat> bounds{Rat(0)};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) bounds.push_back(d[i][j]);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  // Worst violation max_A [mu(A) - nu(A^eps)] for eps in (b_k, b_{k+1}]:
  // pick mu atoms (gain w) against nu atoms reachable through an edge with
  // d <= b_k (cost w). Project selection: 1 - mincut on the bipartite graph.
  const int source = m + n;
  const int sink = m + n + 1;
  std::vector<Rat> violation;
  violation.reserve(bounds.size());
  for (const Rat& b : bounds) {
    detail::RatMaxFlow flow(m + n + 2);
    for (int i = 0; i < m; ++i) flow.add_edge(source, i, wa[i]);
    for (int j = 0; j < n; ++j) flow.add_edge(m + j, sink, wb[j]);
    const Rat blocking(2);  // larger than total mass = effectively infinite
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][j] <= b) flow.add_edge(i, m + j, blocking);
    violation.push_back(Rat(1) - flow.run(source, sink));
  }
  return detail::feasibility_left_endpoint(bounds, violation);
}

inline Rat prohorov_bruteforce(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               int support_cap = 16) {
  detail::check_same_space(mu, nu);
  return prohorov_bruteforce_core(measure_weights(mu), measure_weights(nu),
                                  detail::atom_distance_matrix(mu, nu), support_cap);
}

inline Rat prohorov_fast(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  detail::check_same_space(mu, nu);
  return prohorov_fast_core(measure_weights(mu), measure_weights(nu),
                            detail::atom_distance_matrix(mu, nu));
}

// Symmetrized value. The one-sided value already is a metric; callers that
// must not rely on that theorem (witness validators) use this form.
inline Rat prohorov_metric(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return rat_max(prohorov_fast(mu, nu), prohorov_fast(nu, mu));
}

}  // namespace measdyn
