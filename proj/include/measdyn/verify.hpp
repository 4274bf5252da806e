#pragma once

// Property verifiers that reproduce the headline constructions at desk scale:
// the separation obstruction to induced transitivity on the fig1 interval
// system, the drifting non-shadowed pseudo-orbit on swap2, the sensitivity
// time-set inclusion, the circle-sequence weak-mixing obstruction, and the
// convergence to the point mass at infinity on the compactified integers.

#include <string>
#include <vector>

#include "measdyn/chains.hpp"
#include "measdyn/prohorov.hpp"
#include "measdyn/rng.hpp"
#include "measdyn/sensitivity.hpp"
#include "measdyn/systems.hpp"

namespace measdyn {

// --------------------------------------------------------------------------
// fig1 separation: every measure in the small ball around delta_{-1/2} keeps
// all its forward images far from mu2 = (delta_{-1/2} + delta_{1/2})/2.
//
// The argument is a mass argument: ball membership forces nu(K) <= eps0 for
// every K inside [0,1] (the fattening of such K misses -1/2), the map swaps
// the strictly-negative and strictly-positive halves, and mu2 places mass 1/2
// on a point whose eps-fattening stays inside one half. All steps are exact
// on a dyadic grid, so the horizon check below is an exact computation.

struct Thm22Context {
  SystemDef sys;
  DiscreteMeasure mu1;  // delta_{-1/2}
  DiscreteMeasure mu2;  // (delta_{-1/2} + delta_{1/2})/2
};

inline Thm22Context make_thm22_context(long q = 64) {
  SystemDef sys = zoo_fig1(q);
  const int lo_idx = sys.space->snap(rat(-1, 2));
  const int hi_idx = sys.space->snap(rat(1, 2));
  DiscreteMeasure mu1 = DiscreteMeasure::dirac(sys.space, lo_idx);
  DiscreteMeasure mu2(sys.space, {{lo_idx, rat(1, 2)}, {hi_idx, rat(1, 2)}});
  return Thm22Context{std::move(sys), std::move(mu1), std::move(mu2)};
}

// Symmetrized exact oracle distance to delta_{-1/2}, for ball filtering.
inline Rat thm22_ball_distance(const Thm22Context& ctx, const DiscreteMeasure& nu) {
  return rat_max(prohorov_bruteforce(nu, ctx.mu1), prohorov_bruteforce(ctx.mu1, nu));
}

// Mass the measure places on the nonnegative half of the grid.
inline Rat nonnegative_mass(const DiscreteMeasure& nu) {
  Rat m(0);
  for (const Atom& a : nu.atoms())
    if (nu.space().coord(a.point) >= 0) m += a.weight;
  return m;
}

// A random measure in the open ball around delta_{-1/2}: main mass on a grid
// point within 3/16 of -1/2, stray mass at most 7/40 anywhere. Weights have
// denominator 40 and support stays small enough for the bruteforce oracle.
inline DiscreteMeasure thm22_ball_sample(const Thm22Context& ctx, Rng& rng) {
  const int center = ctx.mu1.atoms()[0].point;  // index of -1/2
  const int main_idx = center - 6 + static_cast<int>(rng.below(13));
  const long stray = static_cast<long>(rng.below(8));
  std::vector<Atom> atoms{{main_idx, Rat(40 - stray) / 40}};
  for (long i = 0; i < stray; ++i)
    atoms.push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(
                         ctx.sys.space->size()))),
                     rat(1, 40)});
  return DiscreteMeasure(ctx.sys.space, std::move(atoms));
}

struct Thm22Result {
  bool holds = false;
  long samples = 0;
  long horizon = 0;
  Rat min_margin;        // smallest P(push^n nu, mu2) seen
  Rat max_nonneg_mass;   // largest nu(grid intersect [0,1]) seen
  long fail_sample = -1;
  long fail_time = -1;
  std::string note;
};

inline Thm22Result verify_thm22_separation(const Rat& eps0, const Rat& eps, long horizon,
                                           long sample_size, long q = 64,
                                           std::uint64_t seed = 0) {
  if (!(eps0 > 0 && eps0 < rat(1, 4))) throw Error("eps0 must lie in (0, 1/4)");
  if (!(eps > 0 && eps < rat(1, 2) - eps0)) throw Error("eps must lie in (0, 1/2 - eps0)");
  if (horizon < 0 || sample_size < 1)
    throw Error("separation check needs horizon >= 0 and at least one sample");

  const Thm22Context ctx = make_thm22_context(q);
  Rng rng(seed);
  Rng stream = rng.fork("thm22");

  Thm22Result res;
  res.samples = sample_size;
  res.horizon = horizon;
  res.min_margin = Rat(2);
  res.max_nonneg_mass = Rat(0);
  for (long s = 0; s < sample_size; ++s) {
    const DiscreteMeasure nu = thm22_ball_sample(ctx, stream);
    if (!(thm22_ball_distance(ctx, nu) < eps0)) {
      res.fail_sample = s;
      res.note = "sampler produced a measure outside the ball";
      return res;
    }
    const Rat mass = nonnegative_mass(nu);
    res.max_nonneg_mass = rat_max(res.max_nonneg_mass, mass);
    if (mass > eps0) {
      res.fail_sample = s;
      res.note = "ball member puts mass " + rat_str(mass) + " on the nonnegative half";
      return res;
    }
    DiscreteMeasure cur = nu;
    for (long n = 0; n <= horizon; ++n) {
      const Rat margin = prohorov_metric(cur, ctx.mu2);
      res.min_margin = rat_min(res.min_margin, margin);
      if (!(margin > eps)) {
        res.fail_sample = s;
        res.fail_time = n;
        res.note = "P(push^" + std::to_string(n) + "(nu), mu2) = " + rat_str(margin) +
                   " is not above " + rat_str(eps);
        return res;
      }
      if (n < horizon) cur = push_step(ctx.sys, cur, n);
    }
  }
  res.holds = true;
  res.note = "all samples stayed separated through the horizon";
  return res;
}

// --------------------------------------------------------------------------
// Drifting pseudo-orbit on swap2: small hops, but no single measure tracks
// both the start delta_a and the balanced tail.

struct Thm38Result {
  bool holds = false;
  long alpha_den = 0;
  long n0 = 0;
  Rat max_hop;          // oracle-checked hop bound (expect <= delta/2)
  Rat min_over_alpha;   // min over alpha of max(P(mu_a, nu_0), P(push^n0 mu_a, nu_n0))
  Rat worst_alpha;
  std::string note;
};

inline Thm38Result verify_drifting_nonshadowing(const Rat& delta, long n0, long alpha_den,
                                                const Rat& floor_bound) {
  SystemDef sys = zoo_swap2();
  const std::vector<DiscreteMeasure> pseudo = drifting_pseudo_orbit(sys, delta, n0);

  Thm38Result res;
  res.alpha_den = alpha_den;
  res.n0 = n0;
  res.max_hop = Rat(0);
  for (std::size_t t = 0; t + 1 < pseudo.size(); ++t) {
    const DiscreteMeasure pushed = push_step(sys, pseudo[t], static_cast<long>(t));
    const Rat hop =
        rat_max(prohorov_bruteforce(pushed, pseudo[t + 1]),
                prohorov_bruteforce(pseudo[t + 1], pushed));
    res.max_hop = rat_max(res.max_hop, hop);
  }
  if (!(res.max_hop < delta)) {
    res.note = "pseudo-orbit hop " + rat_str(res.max_hop) + " reaches delta";
    return res;
  }

  res.min_over_alpha = Rat(2);
  for (long j = 0; j <= alpha_den; ++j) {
    const Rat alpha = rat(j, alpha_den);
    const DiscreteMeasure mu_alpha(sys.space, {{0, alpha}, {1, Rat(1) - alpha}});
    DiscreteMeasure pushed = mu_alpha;
    for (long n = 0; n < n0; ++n) pushed = push_step(sys, pushed, n);
    const Rat defect = rat_max(prohorov_metric(mu_alpha, pseudo.front()),
                               prohorov_metric(pushed, pseudo[static_cast<std::size_t>(n0)]));
    if (defect < res.min_over_alpha) {
      res.min_over_alpha = defect;
      res.worst_alpha = alpha;
    }
  }
  res.holds = res.min_over_alpha >= floor_bound;
  res.note = res.holds ? "no candidate measure tracks both ends of the pseudo-orbit"
                       : "a candidate measure shadows the pseudo-orbit";
  return res;
}

// --------------------------------------------------------------------------
// Sensitivity inclusion: measure-level sensitivity times of delta_x sit inside
// the base sensitivity times at half the separation threshold.

struct Lemma41Result {
  bool holds = true;
  long tuples = 0;
  long fail_tuple = -1;
  int fail_x = -1;
  Rat fail_eps, fail_delta;
  std::string note;
};

// Candidate measures near delta_x: every Dirac in the ball, plus mixtures
// (1 - s) delta_x + s delta_z with s < eps (so the Prohorov distance to
// delta_x is below eps by the mass-move bound).
inline std::vector<DiscreteMeasure> near_dirac_candidates(const SystemDef& sys, int x,
                                                          const Rat& eps, long extra,
                                                          Rng& rng) {
  const MetricSpace& space = *sys.space;
  std::vector<DiscreteMeasure> out;
  for (int y = 0; y < space.size(); ++y)
    if (space.dist(x, y) < eps) out.push_back(DiscreteMeasure::dirac(sys.space, y));
  for (long i = 0; i < extra; ++i) {
    const Rat s = eps * Rat(1 + static_cast<long>(rng.below(7))) / 8;
    const int z = static_cast<int>(rng.below(static_cast<std::uint64_t>(space.size())));
    out.push_back(mix({{Rat(1) - s, DiscreteMeasure::dirac(sys.space, x)},
                       {s, DiscreteMeasure::dirac(sys.space, z)}}));
  }
  return out;
}

inline Lemma41Result verify_lemma41_inclusion(const SystemDef& sys, long horizon, long tuples,
                                              std::uint64_t seed) {
  static const std::vector<Rat> palette = {rat(1, 8), rat(1, 6), rat(1, 5), rat(1, 4),
                                           rat(1, 3), rat(2, 5), rat(1, 2), rat(3, 5),
                                           rat(2, 3), rat(3, 4)};
  Rng rng(seed);
  Rng stream = rng.fork("lemma41:" + sys.name);
  Lemma41Result res;
  res.tuples = tuples;
  for (long t = 0; t < tuples; ++t) {
    const int x = static_cast<int>(stream.below(static_cast<std::uint64_t>(sys.space->size())));
    const auto pick = stream.distinct(static_cast<int>(palette.size()), 2);
    const Rat eps = rat_min(palette[pick[0]], palette[pick[1]]);
    const Rat delta = rat_max(palette[pick[0]], palette[pick[1]]);
    const auto candidates = near_dirac_candidates(sys, x, eps, 15, stream);
    const TimeSet measure_set = measure_sensitivity_times(
        sys, DiscreteMeasure::dirac(sys.space, x), eps, delta, horizon, candidates);
    const TimeSet base_set = sensitivity_times(sys, x, eps, delta / 2, horizon);
    if (!time_set_subset(measure_set, base_set)) {
      res.holds = false;
      res.fail_tuple = t;
      res.fail_x = x;
      res.fail_eps = eps;
      res.fail_delta = delta;
      res.note = "measure-level sensitivity times escape the base time set";
      return res;
    }
  }
  res.note = "inclusion held on every sampled (x, eps, delta)";
  return res;
}

// --------------------------------------------------------------------------
// Circle sequence obstruction: three small balls around clockwise anchors.
// If the induced system were weak mixing of order 2, some single time would
// have to send all three eps0-balls across both of the first two eps1-balls
// (six hits at once); order preservation makes that impossible. The base
// system still produces a time where one ball image crosses both targets.

struct CircleObstructionResult {
  bool holds = false;
  long horizon = 0;
  long six_hit_time = -1;     // first time all 3 x 2 intersections occur (expect none)
  long double_hit_time = -1;  // first time one ball image meets both targets
  std::string note;
};

inline CircleObstructionResult verify_circle_obstruction(long q, long word_count,
                                                         const Rat& eps0, const Rat& eps1) {
  if (!(eps0 > 0 && eps0 < rat(1, 3))) throw Error("eps0 must lie in (0, 1/3)");
  if (!(eps1 > 0 && eps1 < rat(1, 3) - eps0)) throw Error("eps1 must lie in (0, 1/3 - eps0)");
  SystemDef sys = zoo_circle_wm(q, word_count);
  const MetricSpace& space = *sys.space;

  const int anchors[3] = {0, static_cast<int>(q / 3), static_cast<int>(2 * q / 3)};
  std::vector<std::vector<char>> target(3, std::vector<char>(space.size(), 0));
  for (int j = 0; j < 3; ++j)
    for (int p = 0; p < space.size(); ++p)
      if (space.dist(anchors[j], p) < eps1) target[static_cast<std::size_t>(j)][p] = 1;
  for (int j = 0; j < 3; ++j)
    for (int p = 0; p < space.size(); ++p)
      if (target[static_cast<std::size_t>(j)][p] &&
          target[static_cast<std::size_t>((j + 1) % 3)][p])
        throw Error("the small balls must be pairwise disjoint at this resolution");

  std::vector<std::vector<int>> sets(3);
  for (int i = 0; i < 3; ++i)
    for (int p = 0; p < space.size(); ++p)
      if (space.dist(anchors[i], p) < eps0) sets[static_cast<std::size_t>(i)].push_back(p);

  CircleObstructionResult res;
  res.horizon = 2 * word_count;
  std::vector<char> mark(static_cast<std::size_t>(space.size()));
  for (long t = 1; t <= res.horizon; ++t) {
    const MapSpec& f = sys.map_at(t - 1);
    bool hits[3][2];
    for (int i = 0; i < 3; ++i) {
      std::fill(mark.begin(), mark.end(), 0);
      std::vector<int> next;
      next.reserve(sets[static_cast<std::size_t>(i)].size());
      for (const int p : sets[static_cast<std::size_t>(i)]) {
        const int img = apply(space, f, p);
        if (!mark[static_cast<std::size_t>(img)]) {
          mark[static_cast<std::size_t>(img)] = 1;
          next.push_back(img);
        }
      }
      sets[static_cast<std::size_t>(i)] = std::move(next);
      for (int j = 0; j < 2; ++j) {
        hits[i][j] = false;
        for (const int p : sets[static_cast<std::size_t>(i)])
          if (target[static_cast<std::size_t>(j)][p]) {
            hits[i][j] = true;
            break;
          }
      }
    }
    const bool six = hits[0][0] && hits[0][1] && hits[1][0] && hits[1][1] && hits[2][0] &&
                     hits[2][1];
    if (six && res.six_hit_time < 0) res.six_hit_time = t;
    const bool dbl = (hits[0][0] && hits[0][1]) || (hits[1][0] && hits[1][1]) ||
                     (hits[2][0] && hits[2][1]);
    if (dbl && res.double_hit_time < 0) res.double_hit_time = t;
  }
  res.holds = res.six_hit_time < 0 && res.double_hit_time > 0;
  res.note = res.holds
                 ? "no time moves all three balls onto both targets, though single "
                   "ball images do cross both"
                 : (res.six_hit_time >= 0 ? "all three ball images met both targets at once"
                                          : "no ball image ever met both targets");
  return res;
}

// --------------------------------------------------------------------------
// Compactified-integers shift: every measure collapses onto delta_inf.

struct Ex56Result {
  bool holds = true;
  long samples = 0;
  long absorb_time = 0;  // 2N+1
  long fail_sample = -1;
  std::string note;
};

inline Ex56Result verify_ex56_convergence(long n_max, const std::vector<long>& checkpoints,
                                          long samples, std::uint64_t seed) {
  if (n_max < 2) throw Error("convergence check needs N >= 2");
  SystemDef sys = zoo_zshift(n_max);
  const int inf_idx = sys.space->index_of("inf");
  const DiscreteMeasure target = DiscreteMeasure::dirac(sys.space, inf_idx);

  Ex56Result res;
  res.samples = samples;
  res.absorb_time = 2 * n_max + 1;
  if (push_step(sys, target, 0) != target) {
    res.holds = false;
    res.note = "the point mass at infinity is not fixed";
    return res;
  }

  Rng rng(seed);
  Rng stream = rng.fork("ex56");
  const int n_points = sys.space->size();
  for (long s = 0; s < samples; ++s) {
    const int support = 1 + static_cast<int>(stream.below(6));
    const auto points = stream.distinct(n_points, support);
    const auto weights = stream.weights(support, 40);
    std::vector<Atom> atoms;
    for (int i = 0; i < support; ++i)
      atoms.push_back({points[static_cast<std::size_t>(i)],
                       weights[static_cast<std::size_t>(i)]});
    DiscreteMeasure cur(sys.space, std::move(atoms));

    // Monotone decay only starts once every atom has positive coordinate
    // (index above n_max, or infinity itself); before that the distance to
    // delta_inf can still grow as mass crosses zero.
    Rat prev(-1);
    bool prev_set = false;
    const long last = std::max(res.absorb_time,
                               checkpoints.empty() ? 0 : checkpoints.back());
    for (long m = 1; m <= last; ++m) {
      cur = push_step(sys, cur, m - 1);
      if (m >= res.absorb_time && cur != target) {
        res.holds = false;
        res.fail_sample = s;
        res.note = "mass survived past the absorption time at m = " + std::to_string(m);
        return res;
      }
      if (std::find(checkpoints.begin(), checkpoints.end(), m) != checkpoints.end()) {
        bool all_positive = true;
        for (const Atom& a : cur.atoms())
          if (a.point <= n_max) all_positive = false;
        if (!all_positive) continue;
        const Rat d = prohorov_metric(cur, target);
        if (prev_set && d > prev) {
          res.holds = false;
          res.fail_sample = s;
          res.note = "checkpoint distances increased at m = " + std::to_string(m);
          return res;
        }
        prev = d;
        prev_set = true;
      }
    }
  }
  res.note = "all sampled measures collapsed onto the point mass at infinity";
  return res;
}

}  // namespace measdyn
