#pragma once

// Exact deciders over finite system views. Everything here exploits that a
// finite system with an eventually periodic generator has eventually periodic
// subset dynamics, so universally quantified statements over all times reduce
// to finite checks. Openness on finite spaces means singletons, so hitting
// conditions are checked on points.

#include <deque>
#include <map>
#include <queue>
#include <tuple>
#include <vector>

#include "measdyn/measure_grid.hpp"
#include "measdyn/rng.hpp"

namespace measdyn {

enum class Verdict { Holds, Fails, Unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

// Times n in [1, horizon] with f_0^n(U) meeting V.
inline std::vector<long> hitting_times(const FiniteView& view, const std::vector<int>& u_set,
                                       const std::vector<int>& v_set, long horizon) {
  if (u_set.empty() || v_set.empty()) throw Error("hitting times need nonempty sets");
  std::vector<char> current(view.n_states, 0), in_v(view.n_states, 0);
  for (const int u : u_set) current[u] = 1;
  for (const int v : v_set) in_v[v] = 1;
  std::vector<long> hits;
  for (long t = 0; t < horizon; ++t) {
    std::vector<char> next(view.n_states, 0);
    bool met = false;
    for (int s = 0; s < view.n_states; ++s) {
      if (!current[s]) continue;
      const int img = view.step(t, s);
      next[img] = 1;
      if (in_v[img]) met = true;
    }
    if (met) hits.push_back(t + 1);
    current.swap(next);
  }
  return hits;
}

// States visited at times >= 1 by the orbit of u, complete by eventual
// periodicity of (state, phase).
inline std::vector<char> forward_hit_set(const FiniteView& view, int u) {
  std::vector<char> hit(view.n_states, 0);
  std::vector<char> seen(static_cast<std::size_t>(view.n_states) * view.phase_count(), 0);
  int x = u;
  long t = 0;
  while (true) {
    x = view.step(t, x);
    ++t;
    const long ph = view.phase_of(t);
    const std::size_t key = static_cast<std::size_t>(x) * view.phase_count() + ph;
    hit[x] = 1;
    if (seen[key]) break;
    seen[key] = 1;
  }
  return hit;
}

struct TransitivityResult {
  Verdict status = Verdict::Unknown;
  int from = -1, to = -1;  // witness pair on fails: to is never reached from from
  std::string note;
};

inline TransitivityResult decide_transitive(const FiniteView& view) {
  for (int u = 0; u < view.n_states; ++u) {
    const std::vector<char> hit = forward_hit_set(view, u);
    for (int v = 0; v < view.n_states; ++v)
      if (!hit[v])
        return {Verdict::Fails, u, v,
                "orbit of " + view.label(u) + " never reaches " + view.label(v)};
  }
  return {Verdict::Holds, -1, -1, "every point reaches every point"};
}

struct MixingResult {
  Verdict status = Verdict::Unknown;
  int from = -1, to = -1;
  long cycle_start = -1, cycle_len = -1, miss_time = -1;
  std::string note;
};

// Mixing asks every hitting set to be cofinite; for a deterministic orbit
// that forces the orbit of u to be eventually constant at v, for every v.
inline MixingResult decide_mixing(const FiniteView& view) {
  for (int u = 0; u < view.n_states; ++u) {
    // Locate the (state, phase) cycle of the orbit of u.
    std::map<std::pair<int, long>, long> first_time;
    std::vector<int> states{u};
    int x = u;
    long t = 0;
    long cycle_start = -1, cycle_len = -1;
    while (true) {
      const auto key = std::make_pair(x, view.phase_of(t));
      const auto it = first_time.find(key);
      if (it != first_time.end()) {
        cycle_start = it->second;
        cycle_len = t - it->second;
        break;
      }
      first_time.emplace(key, t);
      x = view.step(t, x);
      ++t;
      states.push_back(x);
    }
    for (int v = 0; v < view.n_states; ++v) {
      for (long s = cycle_start; s < cycle_start + cycle_len; ++s) {
        if (states[static_cast<std::size_t>(s)] != v) {
          MixingResult r;
          r.status = Verdict::Fails;
          r.from = u;
          r.to = v;
          r.cycle_start = cycle_start;
          r.cycle_len = cycle_len;
          // hitting sets start at time 1; the miss recurs every cycle_len
          r.miss_time = (s == 0) ? cycle_len : s;
          r.note = "orbit of " + view.label(u) + " misses " + view.label(v) + " at time " +
                   std::to_string(s) + " and every " + std::to_string(cycle_len) +
                   " steps after";
          return r;
        }
      }
    }
  }
  MixingResult r;
  r.status = Verdict::Holds;
  r.note = "every orbit is eventually constant at every point";
  return r;
}

struct WeakMixingResult {
  Verdict status = Verdict::Unknown;
  std::vector<int> from, to;  // witness tuples on fails
  std::string note;
};

// Order-r weak mixing = transitivity of the r-fold product system.
inline WeakMixingResult decide_weak_mixing_order(const FiniteView& view, int order,
                                                 long state_cap = 2000000) {
  if (order < 1) throw Error("weak mixing order must be >= 1");
  long total = 1;
  for (int i = 0; i < order; ++i) {
    total *= view.n_states;
    if (total > state_cap)
      return {Verdict::Unknown, {}, {},
              "product system exceeds the state cap " + std::to_string(state_cap)};
  }
  FiniteView prod;
  prod.n_states = static_cast<int>(total);
  prod.prefix = view.prefix;
  prod.period = view.period;
  const int base = view.n_states;
  prod.step = [base, order, &view](long time, int state) {
    int out = 0, power = 1;
    std::vector<int> digits(order);
    for (int i = 0; i < order; ++i) {
      digits[i] = state % base;
      state /= base;
    }
    for (int i = 0; i < order; ++i) {
      out += view.step(time, digits[i]) * power;
      power *= base;
    }
    return out;
  };
  prod.dist = [](int, int) { return Rat(0); };  // unused by transitivity
  prod.label = [base, order, &view](int state) {
    std::string s = "(";
    for (int i = 0; i < order; ++i) {
      s += (i ? "," : "") + view.label(state % base);
      state /= base;
    }
    return s + ")";
  };
  const TransitivityResult t = decide_transitive(prod);
  WeakMixingResult r;
  r.status = t.status;
  r.note = t.note;
  if (t.status == Verdict::Fails) {
    int f = t.from, g = t.to;
    for (int i = 0; i < order; ++i) {
      r.from.push_back(f % base);
      r.to.push_back(g % base);
      f /= base;
      g /= base;
    }
  }
  return r;
}

// delta-pseudo-orbit from x to y: consecutive hops d(f_n(x_n), x_{n+1}) < delta.
struct Chain {
  std::vector<int> states;
  Rat delta;
  std::vector<Rat> hop_slacks;  // d(f_n(x_n), x_{n+1})
};

inline bool chain_valid(const Chain& c) {
  for (const Rat& s : c.hop_slacks)
    if (!(s < c.delta)) return false;
  return !c.states.empty() && c.hop_slacks.size() + 1 == c.states.size();
}

struct ChainSearchResult {
  bool found = false;
  Chain chain;
  bool closure_certificate = false;  // reachable set fully explored
  std::vector<int> closure;          // delta-reachable states from the start (times >= 1)
  std::string note;
};

inline ChainSearchResult find_chain(const FiniteView& view, int from, int to, const Rat& delta,
                                    long max_len) {
  if (max_len < 1) throw Error("chain search needs max_len >= 1");
  const long phases = view.phase_count();
  const std::size_t nodes = static_cast<std::size_t>(view.n_states) * phases;
  std::vector<long> depth(nodes, -1);
  std::vector<std::size_t> parent(nodes, SIZE_MAX);
  std::queue<std::size_t> queue;

  const auto node_id = [&](int s, long ph) {
    return static_cast<std::size_t>(s) * phases + ph;
  };

  const std::size_t start = node_id(from, view.phase_of(0));
  depth[start] = 0;
  queue.push(start);
  bool exhausted = true;
  ChainSearchResult out;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop();
    const int s = static_cast<int>(cur / phases);
    const long ph = static_cast<long>(cur % phases);
    if (depth[cur] >= max_len) {
      exhausted = false;  // frontier cut off; closure may be incomplete
      continue;
    }
    const int fs = view.step(ph, s);
    const long nph = view.next_phase(ph);
    for (int w = 0; w < view.n_states; ++w) {
      if (!(view.dist(fs, w) < delta)) continue;
      if (w == to) {
        // First discovery is a shortest chain; reconstruct through cur so a
        // from == to loop works even though the start node is marked visited.
        std::vector<int> path{w};
        for (std::size_t at = cur; at != SIZE_MAX; at = parent[at])
          path.push_back(static_cast<int>(at / phases));
        std::reverse(path.begin(), path.end());
        out.found = true;
        out.chain.states = std::move(path);
        out.chain.delta = delta;
        for (std::size_t t = 0; t + 1 < out.chain.states.size(); ++t)
          out.chain.hop_slacks.push_back(view.dist(
              view.step(static_cast<long>(t), out.chain.states[t]), out.chain.states[t + 1]));
        out.note =
            "shortest chain has " + std::to_string(out.chain.hop_slacks.size()) + " hops";
        return out;
      }
      const std::size_t nxt = node_id(w, nph);
      if (depth[nxt] != -1) continue;
      depth[nxt] = depth[cur] + 1;
      parent[nxt] = cur;
      queue.push(nxt);
    }
  }

  std::vector<char> reached(view.n_states, 0);
  for (int s = 0; s < view.n_states; ++s)
    for (long ph = 0; ph < phases; ++ph)
      if (depth[node_id(s, ph)] > 0) reached[s] = 1;
  for (int s = 0; s < view.n_states; ++s)
    if (reached[s]) out.closure.push_back(s);
  out.closure_certificate = exhausted;
  out.note = exhausted ? "the delta-reachable closure from " + view.label(from) +
                             " was fully explored and misses " + view.label(to)
                       : "no chain within max_len, but the search was truncated";
  return out;
}

struct ShadowingResult {
  Verdict status = Verdict::Unknown;
  std::vector<int> pseudo_orbit;  // on fails: a prefix no point eps-shadows
  long explored = 0;
  std::string note;
};

// Safety-game subset construction: a configuration is the current pseudo-orbit
// position together with the set of current positions of points whose orbits
// still eps-shadow every step so far. If a reachable configuration empties
// the survivor set, that prefix is a witness; if the exploration closes with
// no empty successor, every finite prefix is shadowed and finiteness extends
// the verdict to infinite pseudo-orbits (survivor sets of nested prefixes are
// nested and nonempty).
inline ShadowingResult decide_shadowing(const FiniteView& view, const Rat& delta,
                                        const Rat& eps, long node_cap = 2000000) {
  if (!(eps > 0) || !(delta > 0)) throw Error("shadowing needs positive delta and eps");
  const int n = view.n_states;
  const int words = (n + 63) / 64;

  // Open balls as bitsets over states.
  std::vector<std::vector<std::uint64_t>> ball(n, std::vector<std::uint64_t>(words, 0));
  for (int c = 0; c < n; ++c)
    for (int z = 0; z < n; ++z)
      if (view.dist(z, c) < eps) ball[c][z / 64] |= 1ULL << (z % 64);

  struct Node {
    long phase;
    int state;
    std::vector<std::uint64_t> survivors;
    long parent;
  };
  std::deque<Node> nodes;
  std::map<std::tuple<long, int, std::vector<std::uint64_t>>, char> seen;
  std::queue<long> queue;

  const long ph0 = view.phase_of(0);
  for (int v = 0; v < n; ++v) {
    Node node{ph0, v, ball[v], -1};
    const auto key = std::make_tuple(node.phase, v, node.survivors);
    if (seen.emplace(key, 1).second) {
      nodes.push_back(std::move(node));
      queue.push(static_cast<long>(nodes.size()) - 1);
    }
  }

  ShadowingResult out;
  while (!queue.empty()) {
    const long cur = queue.front();
    queue.pop();
    if (static_cast<long>(nodes.size()) > node_cap) {
      out.status = Verdict::Unknown;
      out.explored = static_cast<long>(nodes.size());
      out.note = "state cap " + std::to_string(node_cap) + " exceeded";
      return out;
    }
    const long ph = nodes[cur].phase;
    const int v = nodes[cur].state;
    const int fv = view.step(ph, v);
    const long nph = view.next_phase(ph);

    std::vector<std::uint64_t> image(words, 0);
    for (int c = 0; c < n; ++c)
      if (nodes[cur].survivors[c / 64] & (1ULL << (c % 64))) {
        const int ic = view.step(ph, c);
        image[ic / 64] |= 1ULL << (ic % 64);
      }

    for (int w = 0; w < n; ++w) {
      if (!(view.dist(fv, w) < delta)) continue;
      std::vector<std::uint64_t> next(words);
      bool empty = true;
      for (int k = 0; k < words; ++k) {
        next[k] = image[k] & ball[w][k];
        empty = empty && next[k] == 0;
      }
      if (empty) {
        for (long at = cur; at != -1; at = nodes[at].parent)
          out.pseudo_orbit.push_back(nodes[at].state);
        std::reverse(out.pseudo_orbit.begin(), out.pseudo_orbit.end());
        out.pseudo_orbit.push_back(w);
        out.status = Verdict::Fails;
        out.explored = static_cast<long>(nodes.size());
        out.note = "no point shadows this prefix within eps";
        return out;
      }
      auto key = std::make_tuple(nph, w, next);
      if (seen.emplace(std::move(key), 1).second) {
        nodes.push_back({nph, w, std::move(next), cur});
        queue.push(static_cast<long>(nodes.size()) - 1);
      }
    }
  }
  out.status = Verdict::Holds;
  out.explored = static_cast<long>(nodes.size());
  out.note = "every pseudo-orbit keeps a nonempty survivor set";
  return out;
}

// Recheck a fails witness from scratch: the prefix must be a valid
// delta-pseudo-orbit and every point must break eps somewhere along it.
inline bool validate_shadowing_witness(const FiniteView& view,
                                       const std::vector<int>& pseudo_orbit, const Rat& delta,
                                       const Rat& eps) {
  if (pseudo_orbit.size() < 2) return false;
  for (std::size_t t = 0; t + 1 < pseudo_orbit.size(); ++t)
    if (!(view.dist(view.step(static_cast<long>(t), pseudo_orbit[t]), pseudo_orbit[t + 1]) <
          delta))
      return false;
  for (int z = 0; z < view.n_states; ++z) {
    bool breaks = false;
    int x = z;
    for (std::size_t t = 0; t < pseudo_orbit.size(); ++t) {
      if (!(view.dist(x, pseudo_orbit[t]) < eps)) {
        breaks = true;
        break;
      }
      if (t + 1 < pseudo_orbit.size()) x = view.step(static_cast<long>(t), x);
    }
    if (!breaks) return false;
  }
  return true;
}

// Random valid delta-pseudo-orbit (uniform admissible successor each step).
inline std::vector<int> random_pseudo_orbit(const FiniteView& view, Rng& rng, const Rat& delta,
                                            long length) {
  std::vector<int> orbit{static_cast<int>(rng.below(view.n_states))};
  for (long t = 0; t + 1 < length; ++t) {
    const int fx = view.step(t, orbit.back());
    std::vector<int> options;
    for (int w = 0; w < view.n_states; ++w)
      if (view.dist(fx, w) < delta) options.push_back(w);
    orbit.push_back(options[rng.below(options.size())]);
  }
  return orbit;
}

// Exhaustive scan for a point whose orbit eps-shadows the pseudo-orbit.
inline int find_shadow_point(const FiniteView& view, const std::vector<int>& pseudo_orbit,
                             const Rat& eps) {
  for (int z = 0; z < view.n_states; ++z) {
    bool ok = true;
    int x = z;
    for (std::size_t t = 0; t < pseudo_orbit.size() && ok; ++t) {
      ok = view.dist(x, pseudo_orbit[t]) < eps;
      if (t + 1 < pseudo_orbit.size()) x = view.step(static_cast<long>(t), x);
    }
    if (ok) return z;
  }
  return -1;
}

}  // namespace measdyn
