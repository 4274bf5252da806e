#pragma once

// Autonomous and non-autonomous systems over a space, their orbits, the
// induced action on measures (pushforward), uniform distances on both levels,
// and the zoo of named example systems.

#include <memory>
#include <string>
#include <vector>

#include "measdyn/maps.hpp"
#include "measdyn/measure.hpp"

namespace measdyn {

enum class Generator { Autonomous, Periodic, Listed };

// A system is a time-indexed family of maps f_0, f_1, ... over one space.
// Listed systems carry an explicit prefix and a designated tail map, so every
// system here is eventually periodic in its generator (period 1 after the
// prefix for listed ones); the deciders rely on that.
struct SystemDef {
  std::shared_ptr<const MetricSpace> space;
  Generator generator = Generator::Autonomous;
  std::vector<MapSpec> maps;  // autonomous: one; periodic: the cycle; listed: the prefix
  MapSpec tail;               // listed only
  std::string name;

  const MapSpec& map_at(long n) const {
    if (n < 0) throw Error("time index must be nonnegative");
    switch (generator) {
      case Generator::Autonomous:
        return maps.front();
      case Generator::Periodic:
        return maps[static_cast<std::size_t>(n % static_cast<long>(maps.size()))];
      case Generator::Listed:
        return n < static_cast<long>(maps.size()) ? maps[static_cast<std::size_t>(n)] : tail;
    }
    throw Error("unreachable");
  }

  // Steps before the generator becomes periodic, and the period after that.
  long prefix_length() const {
    return generator == Generator::Listed ? static_cast<long>(maps.size()) : 0;
  }
  long period() const {
    return generator == Generator::Periodic ? static_cast<long>(maps.size()) : 1;
  }
};

inline SystemDef autonomous_system(std::shared_ptr<const MetricSpace> space, MapSpec map,
                                   std::string name = "") {
  SystemDef s;
  s.space = std::move(space);
  s.generator = Generator::Autonomous;
  s.name = name.empty() ? map.name : std::move(name);
  s.maps.push_back(std::move(map));
  return s;
}

inline SystemDef periodic_system(std::shared_ptr<const MetricSpace> space,
                                 std::vector<MapSpec> cycle, std::string name) {
  if (cycle.empty()) throw Error("periodic system needs at least one map");
  SystemDef s;
  s.space = std::move(space);
  s.generator = Generator::Periodic;
  s.maps = std::move(cycle);
  s.name = std::move(name);
  return s;
}

inline SystemDef listed_system(std::shared_ptr<const MetricSpace> space,
                               std::vector<MapSpec> prefix, MapSpec tail, std::string name) {
  SystemDef s;
  s.space = std::move(space);
  s.generator = Generator::Listed;
  s.maps = std::move(prefix);
  s.tail = std::move(tail);
  s.name = std::move(name);
  return s;
}

// x, f_0(x), f_1(f_0(x)), ... : steps+1 entries.
inline std::vector<int> orbit(const SystemDef& sys, int start, long steps) {
  std::vector<int> out;
  out.reserve(steps + 1);
  out.push_back(start);
  int x = start;
  for (long n = 0; n < steps; ++n) {
    x = apply(*sys.space, sys.map_at(n), x);
    out.push_back(x);
  }
  return out;
}

// Induced action: (f push mu)(A) = mu(f^{-1} A), i.e. atoms move along f.
inline DiscreteMeasure pushforward(const MetricSpace& space, const MapSpec& map,
                                   const DiscreteMeasure& mu) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms()) atoms.push_back({apply(space, map, a.point), a.weight});
  return DiscreteMeasure(mu.space_ptr(), std::move(atoms));
}

inline DiscreteMeasure push_step(const SystemDef& sys, const DiscreteMeasure& mu, long time) {
  return pushforward(*sys.space, sys.map_at(time), mu);
}

// f_{from+count-1} ∘ ... ∘ f_{from} applied to mu.
inline DiscreteMeasure push_range(const SystemDef& sys, DiscreteMeasure mu, long from,
                                  long count) {
  for (long n = 0; n < count; ++n) mu = push_step(sys, mu, from + n);
  return mu;
}

// max_x d(f(x), g(x)) under grid semantics.
inline Rat uniform_distance(const MetricSpace& space, const MapSpec& f, const MapSpec& g) {
  Rat worst(0);
  for (int i = 0; i < space.size(); ++i)
    worst = rat_max(worst, space.dist(apply(space, f, i), apply(space, g, i)));
  return worst;
}

// ---------------------------------------------------------------------------
// Zoo of named systems.

// Interval map on [-1,1]: 2x+2 on [-1,-1/2], -2x on [-1/2,0], -x on [0,1].
inline MapSpec fig1_map() {
  return map_piecewise_linear(
      {{rat(-1), rat(0)}, {rat(-1, 2), rat(1)}, {rat(0), rat(0)}, {rat(1), rat(-1)}}, "fig1");
}

// Interval map on [0,1]: 0 on [0,1/2], 2x-1 on (1/2,1].
inline MapSpec ex34_map() {
  return map_piecewise_linear({{rat(0), rat(0)}, {rat(1, 2), rat(0)}, {rat(1), rat(1)}},
                              "ex34");
}

// x^2 on [0,1].
inline MapSpec ex35_map() { return map_quadratic(rat(1), rat(0), rat(0), false, "ex35"); }

// Connect-the-dots map F_m on [0,1]: fixes i/m, sends c_i = (3i+1)/(3m) up to
// c_{i+1} and d_i = (3i+2)/(3m) down to d_{i-1}, with d_{-1} = 0, c_m = 1.
// Uniform distance to the identity is 1/m for m >= 2 (2/3 when m = 1, where
// the single up-node travels all the way to 1).
inline MapSpec fm_map(long m) {
  if (m < 1) throw Error("fm map needs m >= 1");
  std::vector<std::pair<Rat, Rat>> nodes;
  for (long i = 0; i < m; ++i) {
    const Rat a = rat(i, m);
    const Rat c = rat(3 * i + 1, 3 * m);
    const Rat d = rat(3 * i + 2, 3 * m);
    const Rat c_next = (i + 1 < m) ? rat(3 * (i + 1) + 1, 3 * m) : rat(1);
    const Rat d_prev = (i >= 1) ? rat(3 * (i - 1) + 2, 3 * m) : rat(0);
    nodes.push_back({a, a});
    nodes.push_back({c, c_next});
    nodes.push_back({d, d_prev});
  }
  nodes.push_back({rat(1), rat(1)});
  return map_piecewise_linear(std::move(nodes), "F_" + std::to_string(m));
}

// Circle homeomorphism t -> (t + t^2)/2 on the glued unit interval, and the
// rotation by the golden-mean convergent 6765/10946.
inline MapSpec circle_squash_map() {
  return map_quadratic(rat(1, 2), rat(1, 2), rat(0), true, "T");
}
inline Rat golden_rotation_angle() { return rat(6765, 10946); }

inline SystemDef zoo_fig1(long q) {
  auto space = std::make_shared<const MetricSpace>(MetricSpace::interval_grid(rat(-1), rat(1), q));
  return autonomous_system(std::move(space), fig1_map(), "fig1");
}

inline SystemDef zoo_ex34(long q) {
  auto space = std::make_shared<const MetricSpace>(MetricSpace::interval_grid(rat(0), rat(1), q));
  return autonomous_system(std::move(space), ex34_map(), "ex34");
}

inline SystemDef zoo_ex35(long q) {
  auto space = std::make_shared<const MetricSpace>(MetricSpace::interval_grid(rat(0), rat(1), q));
  return autonomous_system(std::move(space), ex35_map(), "ex35");
}

inline SystemDef zoo_swap2() {
  auto space = std::make_shared<const MetricSpace>(MetricSpace::finite({"a", "b"}));
  return autonomous_system(std::move(space), map_table({1, 0}, "swap"), "swap2");
}

inline SystemDef zoo_zshift(long n_max) {
  auto space =
      std::make_shared<const MetricSpace>(MetricSpace::compactified_integers(n_max));
  return autonomous_system(std::move(space), map_compactified_shift(), "zshift");
}

// Schedule of F_m blocks: block n applies F_n for l_n steps, where l_n is the
// least l making f_0^{s_n} map every dyadic cell of level n onto [0,1]. The
// covering is computed on exact rational intervals (images of intervals under
// continuous piecewise-linear maps are intervals); grid images of slope-3
// segments only hit every third grid point, so a grid-image iteration could
// never cover and would misstate the construction.
struct FmSchedule {
  SystemDef system;                // listed prefix + tail F_depth
  std::vector<long> block_ends;    // s_1 < s_2 < ... < s_depth
};

inline FmSchedule zoo_fm_schedule(long q, long depth, long iteration_cap = 1000000) {
  if (depth < 1) throw Error("fm schedule needs depth >= 1");
  auto space = std::make_shared<const MetricSpace>(MetricSpace::interval_grid(rat(0), rat(1), q));
  std::vector<MapSpec> prefix;
  std::vector<long> block_ends;
  long spent = 0;
  for (long level = 1; level <= depth; ++level) {
    const MapSpec f = fm_map(level);
    long need = 0;
    const long cells = 1L << level;
    for (long i = 0; i < cells; ++i) {
      Rat lo = rat(i, cells), hi = rat(i + 1, cells);
      for (const MapSpec& m : prefix) {
        auto [a, b] = interval_image_pl(m, lo, hi);
        lo = a;
        hi = b;
      }
      long l = 0;
      while (!(lo == 0 && hi == 1)) {
        auto [a, b] = interval_image_pl(f, lo, hi);
        lo = a;
        hi = b;
        ++l;
        if (++spent > iteration_cap)
          throw Error("fm schedule failed to cover within the iteration cap");
      }
      need = std::max(need, std::max(l, 1L));
    }
    for (long i = 0; i < need; ++i) prefix.push_back(f);
    block_ends.push_back(static_cast<long>(prefix.size()));
  }
  FmSchedule out{listed_system(std::move(space), std::move(prefix), fm_map(depth),
                               "fm_schedule"),
                 std::move(block_ends)};
  return out;
}

// Alternating sequence g_0, g_0^{-1}, g_1, g_1^{-1}, ... where g_k runs over
// all composition words in the rotation R and the squash T, enumerated by
// length then lexicographically (R before T, word applied right-to-left).
inline MapSpec circle_word(long k) {
  const MapSpec r = map_rotation(golden_rotation_angle(), "R");
  const MapSpec t = circle_squash_map();
  long len = 1, first = 0;  // index of the first word of this length
  while (k - first >= (1L << len)) {
    first += 1L << len;
    ++len;
  }
  const long bits = k - first;
  std::vector<MapSpec> application_order;  // last letter of the word acts first
  std::string word;
  for (long i = 0; i < len; ++i) {
    const bool is_t = (bits >> (len - 1 - i)) & 1;
    word += is_t ? "T" : "R";
  }
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    application_order.push_back(*it == 'T' ? t : r);
  MapSpec g = map_compose(std::move(application_order), word);
  return g;
}

inline MapSpec circle_word_inverse(long k) {
  const MapSpec r_inv = map_rotation(Rat(1) - golden_rotation_angle(), "R^-1");
  const MapSpec t_inv = map_monotone_inverse(circle_squash_map());
  MapSpec g = circle_word(k);
  std::vector<MapSpec> application_order;
  const std::string& word = g.name;
  for (const char c : word)  // first letter of the word is undone first
    application_order.push_back(c == 'T' ? t_inv : r_inv);
  return map_compose(std::move(application_order), word + "^-1");
}

inline SystemDef zoo_circle_wm(long q, long word_count) {
  if (word_count < 1) throw Error("circle sequence needs at least one word");
  auto space = std::make_shared<const MetricSpace>(MetricSpace::circle_grid(q));
  std::vector<MapSpec> prefix;
  prefix.reserve(2 * word_count);
  for (long k = 0; k < word_count; ++k) {
    prefix.push_back(circle_word(k));
    prefix.push_back(circle_word_inverse(k));
  }
  return listed_system(std::move(space), std::move(prefix), map_identity(), "circle_wm");
}

struct ZooParams {
  long q = 16;        // grid resolution
  long n_max = 5;     // compactified truncation
  long depth = 3;     // fm schedule depth
  long words = 16;    // circle sequence words
};

inline SystemDef build_zoo(const std::string& name, const ZooParams& p = {}) {
  if (name == "fig1") return zoo_fig1(p.q);
  if (name == "ex34") return zoo_ex34(p.q);
  if (name == "ex35") return zoo_ex35(p.q);
  if (name == "swap2") return zoo_swap2();
  if (name == "zshift") return zoo_zshift(p.n_max);
  if (name == "fm_schedule") return zoo_fm_schedule(p.q, p.depth).system;
  if (name == "circle_wm") return zoo_circle_wm(p.q, p.words);
  throw Error("unknown zoo system '" + name +
              "' (have fig1, ex34, ex35, swap2, fm_schedule, circle_wm, zshift)");
}

}  // namespace measdyn
