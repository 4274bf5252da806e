#pragma once

// Constructive chains between measures under the induced dynamics, plus the
// drifting pseudo-orbit on the two-point swap system that no measure shadows.
//
// The chain construction: given eps > 0 let N be the least integer with
// N*eps/2 >= 1, pick any length k >= N, pull nu back k steps to nu* (one
// preimage witness per atom, so the forward push returns nu exactly), and set
//
//   mu_n = (1 - n*eps/2) * push^n(mu) + (n*eps/2) * push^n(nu*),   n < N
//   mu_n = push^n(nu*),                                            N <= n <= k,
//
// so mu_0 = mu and mu_k = nu exactly. Each interpolation hop moves mass at
// most eps/2 between the two forward tracks, and the Prohorov distance is
// bounded by the mass moved, so every hop is <= eps/2 < eps; the tail hops
// are exact pushforwards, hence zero. The construction is generic over the
// measure representation: grid measures use grid preimage witnesses, exact
// line measures use exact piecewise-linear preimages (needed where a map is
// surjective on the real interval but not on any uniform grid).

#include <vector>

#include "measdyn/prohorov.hpp"
#include "measdyn/systems.hpp"

namespace measdyn {

// --------------------------------------------------------------------------
// Exact rational atoms on the real line, for measures that must live off any
// grid. Canonical form mirrors DiscreteMeasure: sorted, merged, positive.

struct LineAtom {
  Rat position;
  Rat weight;
};

struct LineMeasure {
  std::vector<LineAtom> atoms;
};

inline LineMeasure line_measure(std::vector<LineAtom> raw) {
  if (raw.empty()) throw Error("measure needs a nonempty support list");
  std::sort(raw.begin(), raw.end(),
            [](const LineAtom& a, const LineAtom& b) { return a.position < b.position; });
  LineMeasure m;
  Rat total(0);
  for (const LineAtom& a : raw) {
    if (a.weight < 0) throw Error("negative weight in measure");
    if (a.weight == 0) continue;
    total += a.weight;
    if (!m.atoms.empty() && m.atoms.back().position == a.position)
      m.atoms.back().weight += a.weight;
    else
      m.atoms.push_back(a);
  }
  if (total != 1)
    throw Error("weights must sum to one exactly, got " + rat_str(total));
  return m;
}

inline LineMeasure line_dirac(const Rat& x) { return line_measure({{x, Rat(1)}}); }

inline bool operator==(const LineMeasure& a, const LineMeasure& b) {
  if (a.atoms.size() != b.atoms.size()) return false;
  for (std::size_t i = 0; i < a.atoms.size(); ++i)
    if (a.atoms[i].position != b.atoms[i].position || a.atoms[i].weight != b.atoms[i].weight)
      return false;
  return true;
}
inline bool operator!=(const LineMeasure& a, const LineMeasure& b) { return !(a == b); }

inline std::vector<std::vector<Rat>> line_distance_matrix(const LineMeasure& mu,
                                                          const LineMeasure& nu) {
  std::vector<std::vector<Rat>> d(mu.atoms.size(), std::vector<Rat>(nu.atoms.size()));
  for (std::size_t i = 0; i < mu.atoms.size(); ++i)
    for (std::size_t j = 0; j < nu.atoms.size(); ++j)
      d[i][j] = rat_abs(mu.atoms[i].position - nu.atoms[j].position);
  return d;
}

inline std::vector<Rat> line_weights(const LineMeasure& m) {
  std::vector<Rat> w;
  w.reserve(m.atoms.size());
  for (const LineAtom& a : m.atoms) w.push_back(a.weight);
  return w;
}

inline Rat line_prohorov_fast(const LineMeasure& mu, const LineMeasure& nu) {
  return prohorov_fast_core(line_weights(mu), line_weights(nu), line_distance_matrix(mu, nu));
}

inline Rat line_prohorov_bruteforce(const LineMeasure& mu, const LineMeasure& nu,
                                    int support_cap = 16) {
  return prohorov_bruteforce_core(line_weights(mu), line_weights(nu),
                                  line_distance_matrix(mu, nu), support_cap);
}

// --------------------------------------------------------------------------
// The chain construction, generic over the measure representation.

template <class M>
struct MeasureChainT {
  std::vector<M> measures;  // mu_0, ..., mu_k
  Rat eps;
  std::vector<Rat> hops;  // exact P(push_n(mu_n), mu_{n+1})
};

// Least admissible chain length for a given eps.
inline long chain_min_length(const Rat& eps) {
  if (!(eps > 0)) throw Error("chain construction needs eps > 0");
  return rat_ceil(Rat(2) / eps);  // least N with N*eps/2 >= 1
}

template <class Ops>
MeasureChainT<typename Ops::M> constructive_measure_chain(const Ops& ops,
                                                          const typename Ops::M& mu,
                                                          const typename Ops::M& nu,
                                                          const Rat& eps, long k) {
  using M = typename Ops::M;
  const long n_min = chain_min_length(eps);
  if (k < n_min)
    throw Error("chain length k = " + std::to_string(k) + " is too short for eps = " +
                rat_str(eps) + "; the minimal k is " + std::to_string(n_min));

  std::vector<M> mu_track{mu}, star_track{ops.pull_back(nu, k)};
  for (long n = 0; n < k; ++n) {
    if (n < n_min - 1) mu_track.push_back(ops.push(mu_track.back(), n));
    star_track.push_back(ops.push(star_track.back(), n));
  }

  MeasureChainT<M> chain;
  chain.eps = eps;
  for (long n = 0; n <= k; ++n) {
    if (n < n_min) {
      const Rat lam = Rat(n) * eps / 2;
      chain.measures.push_back(ops.mix2(Rat(1) - lam, mu_track[static_cast<std::size_t>(n)],
                                        lam, star_track[static_cast<std::size_t>(n)]));
    } else {
      chain.measures.push_back(star_track[static_cast<std::size_t>(n)]);
    }
  }
  for (long n = 0; n < k; ++n)
    chain.hops.push_back(ops.dist(ops.push(chain.measures[static_cast<std::size_t>(n)], n),
                                  chain.measures[static_cast<std::size_t>(n) + 1]));
  return chain;
}

struct GridChainOps {
  const SystemDef* sys;
  using M = DiscreteMeasure;

  M push(const M& m, long time) const { return push_step(*sys, m, time); }

  // One grid preimage witness per atom through f_{steps-1}, ..., f_0.
  M pull_back(const M& m, long steps) const {
    std::vector<Atom> atoms;
    atoms.reserve(m.atoms().size());
    for (const Atom& a : m.atoms()) {
      int x = a.point;
      for (long n = steps - 1; n >= 0; --n)
        x = preimage_witness(*sys->space, sys->map_at(n), x);
      atoms.push_back({x, a.weight});
    }
    return M(m.space_ptr(), std::move(atoms));
  }

  M mix2(const Rat& a, const M& x, const Rat& b, const M& y) const {
    return mix({{a, x}, {b, y}});
  }

  Rat dist(const M& x, const M& y) const { return prohorov_fast(x, y); }
};

struct LineChainOps {
  const SystemDef* sys;  // maps must support exact evaluation and be piecewise linear
  using M = LineMeasure;

  M push(const M& m, long time) const {
    const MapSpec& f = sys->map_at(time);
    std::vector<LineAtom> atoms;
    atoms.reserve(m.atoms.size());
    for (const LineAtom& a : m.atoms) atoms.push_back({apply_exact(f, a.position), a.weight});
    return line_measure(std::move(atoms));
  }

  M pull_back(const M& m, long steps) const {
    std::vector<LineAtom> atoms;
    atoms.reserve(m.atoms.size());
    for (const LineAtom& a : m.atoms) {
      Rat x = a.position;
      for (long n = steps - 1; n >= 0; --n) x = preimage_exact_pl(sys->map_at(n), x);
      atoms.push_back({x, a.weight});
    }
    return line_measure(std::move(atoms));
  }

  M mix2(const Rat& a, const M& x, const Rat& b, const M& y) const {
    std::vector<LineAtom> atoms;
    for (const LineAtom& t : x.atoms)
      if (a > 0) atoms.push_back({t.position, a * t.weight});
    for (const LineAtom& t : y.atoms)
      if (b > 0) atoms.push_back({t.position, b * t.weight});
    return line_measure(std::move(atoms));
  }

  Rat dist(const M& x, const M& y) const { return line_prohorov_fast(x, y); }
};

using GridMeasureChain = MeasureChainT<DiscreteMeasure>;
using LineMeasureChain = MeasureChainT<LineMeasure>;

inline GridMeasureChain grid_measure_chain(const SystemDef& sys, const DiscreteMeasure& mu,
                                           const DiscreteMeasure& nu, const Rat& eps, long k) {
  detail::check_same_space(mu, nu);
  return constructive_measure_chain(GridChainOps{&sys}, mu, nu, eps, k);
}

inline LineMeasureChain line_measure_chain(const SystemDef& sys, const LineMeasure& mu,
                                           const LineMeasure& nu, const Rat& eps, long k) {
  return constructive_measure_chain(LineChainOps{&sys}, mu, nu, eps, k);
}

// --------------------------------------------------------------------------
// Drifting pseudo-orbit on the two-point swap system. Start at a point mass,
// shift mass min(delta/2, excess over 1/2) from the heavy side to the light
// side of each pushforward; once balanced it stays balanced (the swap fixes
// the balanced measure), so every hop is <= delta/2 < delta. Any candidate
// measure with mass alpha at the start point sits at distance 1 - alpha from
// the start of the pseudo-orbit and at |alpha - 1/2| from its balanced tail,
// and max(1 - alpha, |alpha - 1/2|) >= 1/4 for every alpha, so no measure
// shadows the pseudo-orbit once eps <= 1/4.

inline std::vector<DiscreteMeasure> drifting_pseudo_orbit(const SystemDef& sys,
                                                          const Rat& delta, long length) {
  if (sys.space->size() != 2) throw Error("drifting pseudo-orbit needs a two-point space");
  if (!(delta > 0)) throw Error("pseudo-orbit needs delta > 0");
  const Rat half = rat(1, 2);
  std::vector<DiscreteMeasure> out;
  out.push_back(DiscreteMeasure::dirac(sys.space, 0));
  for (long n = 0; n < length; ++n) {
    const DiscreteMeasure pushed = push_step(sys, out.back(), n);
    Rat wa = pushed.weight_at(0), wb = pushed.weight_at(1);
    if (wa > half) {
      const Rat move = rat_min(delta / 2, wa - half);
      wa -= move;
      wb += move;
    } else if (wb > half) {
      const Rat move = rat_min(delta / 2, wb - half);
      wb -= move;
      wa += move;
    }
    out.push_back(DiscreteMeasure(sys.space, {{0, wa}, {1, wb}}));
  }
  return out;
}

// max_t of the symmetrized Prohorov distance between the induced orbit of a
// candidate measure and the pseudo-orbit.
inline Rat shadow_defect(const SystemDef& sys, const std::vector<DiscreteMeasure>& pseudo,
                         const DiscreteMeasure& candidate) {
  if (pseudo.empty()) throw Error("shadow defect needs a nonempty pseudo-orbit");
  Rat worst(0);
  DiscreteMeasure x = candidate;
  for (std::size_t t = 0; t < pseudo.size(); ++t) {
    worst = rat_max(worst, prohorov_metric(x, pseudo[t]));
    if (t + 1 < pseudo.size()) x = push_step(sys, x, static_cast<long>(t));
  }
  return worst;
}

// Hop sizes d(push_n(nu_n), nu_{n+1}) of a measure pseudo-orbit.
inline std::vector<Rat> pseudo_orbit_hops(const SystemDef& sys,
                                          const std::vector<DiscreteMeasure>& pseudo) {
  std::vector<Rat> hops;
  for (std::size_t t = 0; t + 1 < pseudo.size(); ++t)
    hops.push_back(
        prohorov_metric(push_step(sys, pseudo[t], static_cast<long>(t)), pseudo[t + 1]));
  return hops;
}

}  // namespace measdyn
