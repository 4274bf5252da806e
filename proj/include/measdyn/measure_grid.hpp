#pragma once

// The measure grid M_q: all probability measures on a finite space whose
// weights are multiples of 1/q. Pushforwards keep denominators, so M_q is
// closed under the induced dynamics, which makes the induced system a finite
// system in its own right; deciders run on it through the same view as base
// systems.

#include <functional>
#include <string>
#include <vector>

#include "measdyn/prohorov.hpp"
#include "measdyn/systems.hpp"

namespace measdyn {

// Number of weight vectors: C(size+q-1, size-1), guarded against blowup.
inline long measure_grid_count(int size, long q, long cap) {
  __int128 count = 1;
  for (long i = 1; i < size; ++i) {
    count = count * (q + i) / i;  // running binomial C(q+i, i); division is exact
    if (count > cap)
      throw Error("measure grid M_" + std::to_string(q) + " has more than " +
                  std::to_string(cap) + " states; refusing to enumerate");
  }
  return static_cast<long>(count);
}

// States in canonical order: lexicographic over the weight tuple
// (k_0, ..., k_{n-1}), k_i ascending at the first point.
inline std::vector<DiscreteMeasure> enumerate_measure_grid(
    std::shared_ptr<const MetricSpace> space, long q, long cap = 200000) {
  if (q < 1) throw Error("measure grid needs q >= 1");
  measure_grid_count(space->size(), q, cap);
  std::vector<DiscreteMeasure> out;
  std::vector<long> counts(space->size(), 0);
  const std::function<void(int, long)> rec = [&](int at, long remaining) {
    if (at == space->size() - 1) {
      counts[at] = remaining;
      std::vector<Atom> atoms;
      for (int i = 0; i < space->size(); ++i)
        if (counts[i] > 0) atoms.push_back({i, rat(counts[i], q)});
      out.emplace_back(space, std::move(atoms));
      return;
    }
    for (long k = 0; k <= remaining; ++k) {
      counts[at] = k;
      rec(at + 1, remaining - k);
    }
  };
  rec(0, q);
  return out;
}

// Finite view of a system: states, a step function per time, an exact metric
// and labels. Base systems and induced measure-grid systems both fit.
struct FiniteView {
  int n_states = 0;
  long prefix = 0;  // times before the step rule becomes periodic
  long period = 1;
  std::function<int(long time, int state)> step;
  std::function<Rat(int, int)> dist;
  std::function<std::string(int)> label;

  // Phases identify times with equal step rules: 0..prefix-1, then cycling.
  long phase_count() const { return prefix + period; }
  long phase_of(long time) const {
    return time < prefix ? time : prefix + (time - prefix) % period;
  }
  long next_phase(long phase) const {
    const long t = phase + 1;
    return t < prefix ? t : prefix + (t - prefix) % period;
  }
};

inline FiniteView make_base_view(const SystemDef& sys) {
  const long prefix = sys.prefix_length();
  const long period = sys.period();
  auto tables = std::make_shared<std::vector<std::vector<int>>>();
  for (long ph = 0; ph < prefix + period; ++ph)
    tables->push_back(apply_table(*sys.space, sys.map_at(ph)));
  FiniteView v;
  v.n_states = sys.space->size();
  v.prefix = prefix;
  v.period = period;
  auto space = sys.space;
  v.step = [tables, prefix, period](long time, int state) {
    const long ph = time < prefix ? time : prefix + (time - prefix) % period;
    return (*tables)[static_cast<std::size_t>(ph)][state];
  };
  v.dist = [space](int a, int b) { return space->dist(a, b); };
  v.label = [space](int i) { return space->label(i); };
  return v;
}

struct InducedView {
  FiniteView view;
  std::vector<DiscreteMeasure> states;
};

// Induced system on M_q with the Prohorov metric, fully tabulated.
inline InducedView make_induced_view(const SystemDef& sys, long q, long cap = 4096) {
  InducedView iv;
  iv.states = enumerate_measure_grid(sys.space, q, cap);
  const int n = static_cast<int>(iv.states.size());

  const auto index_of = [&](const DiscreteMeasure& m) {
    for (int i = 0; i < n; ++i)
      if (iv.states[i] == m) return i;
    throw Error("pushforward left the measure grid");
  };

  const long prefix = sys.prefix_length();
  const long period = sys.period();
  auto tables = std::make_shared<std::vector<std::vector<int>>>();
  for (long ph = 0; ph < prefix + period; ++ph) {
    std::vector<int> table(n);
    for (int i = 0; i < n; ++i) table[i] = index_of(push_step(sys, iv.states[i], ph));
    tables->push_back(std::move(table));
  }

  auto dists = std::make_shared<std::vector<Rat>>(static_cast<std::size_t>(n) * n);
  auto states = std::make_shared<std::vector<DiscreteMeasure>>(iv.states);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const Rat d = prohorov_fast(iv.states[i], iv.states[j]);
      (*dists)[static_cast<std::size_t>(i) * n + j] = d;
      (*dists)[static_cast<std::size_t>(j) * n + i] = d;
    }

  iv.view.n_states = n;
  iv.view.prefix = prefix;
  iv.view.period = period;
  iv.view.step = [tables, prefix, period](long time, int state) {
    const long ph = time < prefix ? time : prefix + (time - prefix) % period;
    return (*tables)[static_cast<std::size_t>(ph)][state];
  };
  iv.view.dist = [dists, n](int a, int b) {
    return (*dists)[static_cast<std::size_t>(a) * n + b];
  };
  iv.view.label = [states](int i) {
    const DiscreteMeasure& m = (*states)[i];
    std::string s = "[";
    for (const Atom& a : m.atoms()) {
      if (s.size() > 1) s += ", ";
      s += m.space().label(a.point) + ":" + rat_str(a.weight);
    }
    return s + "]";
  };
  return iv;
}

// max over sampled measures of P(f push mu, g push mu).
inline Rat induced_uniform_distance(const MetricSpace& space, const MapSpec& f,
                                    const MapSpec& g,
                                    const std::vector<DiscreteMeasure>& sample) {
  if (sample.empty()) throw Error("induced uniform distance needs a sample");
  Rat worst(0);
  for (const DiscreteMeasure& mu : sample)
    worst = rat_max(worst, prohorov_fast(pushforward(space, f, mu), pushforward(space, g, mu)));
  return worst;
}

}  // namespace measdyn
