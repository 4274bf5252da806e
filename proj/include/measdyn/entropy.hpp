#pragma once

// Topological entropy along a time sequence A = a_1 < a_2 < ..., estimated
// through (n, eps, A)-separated sets: x, y are separated when some j <= n has
// d(orbit_x(a_j), orbit_y(a_j)) > eps (strictly). s_n(eps) is the largest
// pairwise-separated subset of the sample; the growth rate per eps is the
// least-squares slope of ln s_n against a_n (clamped at zero), and the
// estimate is the maximum over the tested eps. Everything runs on a
// FiniteView so base systems and induced measure systems share one path.

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "measdyn/measure_grid.hpp"
#include "measdyn/systems.hpp"

namespace measdyn {

struct TimeSequence {
  std::vector<long> entries;
};

inline TimeSequence time_sequence(std::vector<long> entries) {
  if (entries.empty() || entries.front() < 1)
    throw Error("time sequence entries must start at 1 or later");
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i] <= entries[i - 1])
      throw Error("time sequence entries must be strictly increasing");
  return TimeSequence{std::move(entries)};
}

inline TimeSequence time_sequence_integers(long count) {
  std::vector<long> e;
  for (long i = 1; i <= count; ++i) e.push_back(i);
  return time_sequence(std::move(e));
}

using SeparationPred = std::function<bool(int, int)>;  // true when d > eps

// Grid spaces admit an integer index test: d(i, j) > eps iff the index gap
// reaches floor(eps / step) + 1. Other spaces fall back to exact comparison.
inline SeparationPred separation_predicate(const MetricSpace& space, const Rat& eps) {
  if (eps < 0) throw Error("separation needs eps >= 0");
  if (space.kind() == SpaceKind::IntervalGrid || space.kind() == SpaceKind::CircleGrid) {
    const Rat step = (space.hi() - space.lo()) / space.q();
    const long ti = rat_floor(eps / step) + 1;
    const long q = space.q();
    if (space.kind() == SpaceKind::IntervalGrid)
      return [ti](int i, int j) { return std::labs(static_cast<long>(i) - j) >= ti; };
    return [ti, q](int i, int j) {
      const long gap = std::labs(static_cast<long>(i) - j);
      return std::min(gap, q - gap) >= ti;
    };
  }
  const MetricSpace* sp = &space;
  Rat e = eps;
  return [sp, e](int i, int j) { return sp->dist(i, j) > e; };
}

inline SeparationPred separation_predicate(const FiniteView& view, const Rat& eps) {
  if (eps < 0) throw Error("separation needs eps >= 0");
  const FiniteView* v = &view;
  Rat e = eps;
  return [v, e](int i, int j) { return v->dist(i, j) > e; };
}

// positions[i][j] = state of sample[i] at time a_{j+1}.
inline std::vector<std::vector<int>> orbit_positions(const FiniteView& view,
                                                     const std::vector<int>& sample,
                                                     const std::vector<long>& times) {
  std::vector<std::vector<int>> pos(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    pos[i].reserve(times.size());
    int cur = sample[i];
    long t = 0;
    for (const long target : times) {
      for (; t < target; ++t) cur = view.step(t, cur);
      pos[i].push_back(cur);
    }
  }
  return pos;
}

struct SeparatedResult {
  long count = 0;
  std::vector<int> members;  // indices into the sample
  std::string method;
};

namespace detail {

inline bool rows_separated(const std::vector<int>& a, const std::vector<int>& b,
                           std::size_t upto, const SeparationPred& pred) {
  for (std::size_t j = 0; j < upto; ++j)
    if (pred(a[j], b[j])) return true;
  return false;
}

inline void clique_search(const std::vector<std::uint64_t>& adj, std::uint64_t cand,
                          int cur, int& best, std::uint64_t chosen, std::uint64_t& best_set) {
  if (cur + __builtin_popcountll(cand) <= best) return;
  if (cand == 0) {
    if (cur > best) { best = cur; best_set = chosen; }
    return;
  }
  const int v = 63 - __builtin_clzll(cand);
  const std::uint64_t bit = std::uint64_t{1} << v;
  clique_search(adj, (cand & ~bit) & adj[static_cast<std::size_t>(v)], cur + 1, best,
                chosen | bit, best_set);
  clique_search(adj, cand & ~bit, cur, best, chosen, best_set);
  if (cur > best) { best = cur; best_set = chosen; }
}

}  // namespace detail

inline SeparatedResult separated_set_greedy(const std::vector<std::vector<int>>& positions,
                                            std::size_t n, const SeparationPred& pred) {
  SeparatedResult res;
  res.method = "greedy";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    bool ok = true;
    for (const int k : res.members) {
      if (!detail::rows_separated(positions[i], positions[static_cast<std::size_t>(k)], n,
                                  pred)) {
        ok = false;
        break;
      }
    }
    if (ok) res.members.push_back(static_cast<int>(i));
  }
  res.count = static_cast<long>(res.members.size());
  return res;
}

inline SeparatedResult separated_set_exact(const std::vector<std::vector<int>>& positions,
                                           std::size_t n, const SeparationPred& pred) {
  if (positions.size() > 64)
    throw Error("exact separated sets are capped at 64 sample points; use the greedy method");
  const std::size_t m = positions.size();
  std::vector<std::uint64_t> adj(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (detail::rows_separated(positions[i], positions[j], n, pred)) {
        adj[i] |= std::uint64_t{1} << j;
        adj[j] |= std::uint64_t{1} << i;
      }
  std::uint64_t cand = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  int best = 0;
  std::uint64_t best_set = 0;
  detail::clique_search(adj, cand, 0, best, 0, best_set);
  SeparatedResult res;
  res.method = "exact";
  for (std::size_t i = 0; i < m; ++i)
    if (best_set & (std::uint64_t{1} << i)) res.members.push_back(static_cast<int>(i));
  res.count = best;
  return res;
}

inline SeparatedResult separated_set(const FiniteView& view, const std::vector<int>& sample,
                                     long n, const Rat& eps, const TimeSequence& A,
                                     const std::string& method = "greedy") {
  if (n < 1) throw Error("separated sets need n >= 1");
  if (static_cast<std::size_t>(n) > A.entries.size())
    throw Error("time sequence has only " + std::to_string(A.entries.size()) +
                " entries; n = " + std::to_string(n) + " exceeds it");
  const std::vector<long> times(A.entries.begin(), A.entries.begin() + n);
  const auto positions = orbit_positions(view, sample, times);
  const SeparationPred pred = separation_predicate(view, eps);
  if (method == "greedy") return separated_set_greedy(positions, times.size(), pred);
  if (method == "exact") return separated_set_exact(positions, times.size(), pred);
  throw Error("unknown separated-set method '" + method + "' (have greedy, exact)");
}

struct EntropyRow {
  Rat eps;
  long n = 0;
  long a_n = 0;
  long s_n = 0;
  std::string method;
  double quotient = 0.0;  // ln(s_n) / a_n
  double rate = 0.0;      // fitted rate for this eps
};

struct EntropyEstimate {
  std::vector<EntropyRow> rows;
  std::vector<std::pair<Rat, double>> rates;  // per eps
  double estimate = 0.0;
  std::string method;
};

inline double least_squares_slope(const std::vector<double>& xs,
                                  const std::vector<double>& ys) {
  const std::size_t m = xs.size();
  if (m < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) { mx += xs[i]; my += ys[i]; }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return den == 0.0 ? 0.0 : num / den;
}

// pred_factory lets grid spaces install the integer fast path; the default
// compares view distances exactly.
inline EntropyEstimate entropy_estimate(
    const FiniteView& view, const std::vector<int>& sample, const TimeSequence& A,
    const std::vector<Rat>& eps_list, const std::vector<long>& n_list,
    const std::string& method = "greedy",
    const std::function<SeparationPred(const Rat&)>& pred_factory = nullptr) {
  if (eps_list.empty() || n_list.empty())
    throw Error("entropy estimation needs nonempty eps and n lists");
  long n_max = 0;
  for (const long n : n_list) {
    if (n < 1) throw Error("separated sets need n >= 1");
    n_max = std::max(n_max, n);
  }
  if (static_cast<std::size_t>(n_max) > A.entries.size())
    throw Error("time sequence has only " + std::to_string(A.entries.size()) +
                " entries; n = " + std::to_string(n_max) + " exceeds it");
  const std::vector<long> times(A.entries.begin(), A.entries.begin() + n_max);
  const auto positions = orbit_positions(view, sample, times);

  EntropyEstimate est;
  est.method = method;
  est.estimate = 0.0;
  for (const Rat& eps : eps_list) {
    const SeparationPred pred =
        pred_factory ? pred_factory(eps) : separation_predicate(view, eps);
    std::vector<double> xs, ys;
    std::vector<EntropyRow> rows;
    for (const long n : n_list) {
      SeparatedResult sep;
      if (method == "greedy")
        sep = separated_set_greedy(positions, static_cast<std::size_t>(n), pred);
      else if (method == "exact")
        sep = separated_set_exact(positions, static_cast<std::size_t>(n), pred);
      else
        throw Error("unknown separated-set method '" + method + "' (have greedy, exact)");
      EntropyRow row;
      row.eps = eps;
      row.n = n;
      row.a_n = A.entries[static_cast<std::size_t>(n - 1)];
      row.s_n = sep.count;
      row.method = sep.method;
      row.quotient = std::log(static_cast<double>(sep.count)) / static_cast<double>(row.a_n);
      rows.push_back(row);
      xs.push_back(static_cast<double>(row.a_n));
      ys.push_back(std::log(static_cast<double>(sep.count)));
    }
    const double rate = std::max(0.0, least_squares_slope(xs, ys));
    for (EntropyRow& row : rows) {
      row.rate = rate;
      est.rows.push_back(row);
    }
    est.rates.emplace_back(eps, rate);
    est.estimate = std::max(est.estimate, rate);
  }
  return est;
}

inline EntropyEstimate entropy_estimate_system(
    const SystemDef& sys, const TimeSequence& A, const std::vector<Rat>& eps_list,
    const std::vector<long>& n_list, std::vector<int> sample = {},
    const std::string& method = "greedy") {
  const FiniteView view = make_base_view(sys);
  if (sample.empty())
    for (int i = 0; i < view.n_states; ++i) sample.push_back(i);
  const MetricSpace* space = sys.space.get();
  const auto factory = [space](const Rat& eps) { return separation_predicate(*space, eps); };
  return entropy_estimate(view, sample, A, eps_list, n_list, method, factory);
}

inline std::string entropy_csv(const EntropyEstimate& est) {
  std::ostringstream out;
  out << "eps,n,a_n,s_n,method,rate\n";
  for (const EntropyRow& row : est.rows) {
    char rate[64];
    std::snprintf(rate, sizeof rate, "%.12g", row.rate);
    out << rat_str(row.eps) << ',' << row.n << ',' << row.a_n << ',' << row.s_n << ','
        << row.method << ',' << rate << '\n';
  }
  return out.str();
}

// Dirac embedding x -> delta_x is isometric, so separated sets of the base
// survive inside every induced measure grid: s_n(induced, M_q) >= s_n(base).
struct GrowthRow {
  long q = 0;
  long n_states = 0;
  long s_base = 0;
  long s_induced = 0;
  bool embedding_ok = false;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  bool all_ok = true;
};

inline GrowthTable induced_entropy_growth(const SystemDef& sys, const std::vector<long>& q_list,
                                          const TimeSequence& A, const Rat& eps, long n,
                                          long state_cap = 4096) {
  const FiniteView base = make_base_view(sys);
  std::vector<int> base_sample;
  for (int i = 0; i < base.n_states; ++i) base_sample.push_back(i);
  const long s_base = separated_set(base, base_sample, n, eps, A).count;

  GrowthTable table;
  for (const long q : q_list) {
    const InducedView induced = make_induced_view(sys, q, state_cap);
    std::vector<int> sample;
    for (int i = 0; i < induced.view.n_states; ++i) sample.push_back(i);
    GrowthRow row;
    row.q = q;
    row.n_states = induced.view.n_states;
    row.s_base = s_base;
    row.s_induced = separated_set(induced.view, sample, n, eps, A).count;
    row.embedding_ok = row.s_induced >= row.s_base;
    table.all_ok = table.all_ok && row.embedding_ok;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace measdyn
