// Acceptance gate: every release criterion in one binary, one PASS/FAIL line
// each, exit status 0 only when all of them hold. Numeric claims are checked
// in exact rational arithmetic wherever the quantity is rational.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "measdyn/chains.hpp"
#include "measdyn/deciders.hpp"
#include "measdyn/entropy.hpp"
#include "measdyn/measure_grid.hpp"
#include "measdyn/prohorov.hpp"
#include "measdyn/verify.hpp"

using namespace measdyn;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::shared_ptr<const MetricSpace> line_space(const std::vector<Rat>& coords,
                                              const std::string& prefix) {
  std::vector<std::string> labels;
  std::vector<Rat> d;
  const int n = static_cast<int>(coords.size());
  for (int i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d.push_back(rat_abs(coords[static_cast<std::size_t>(i)] -
                          coords[static_cast<std::size_t>(j)]));
  return std::make_shared<const MetricSpace>(
      MetricSpace::finite_table(std::move(labels), std::move(d)));
}

DiscreteMeasure random_measure(const std::shared_ptr<const MetricSpace>& space, Rng& rng,
                               int max_support, long den = 40) {
  const int cap = std::min<int>(max_support, space->size());
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap)));
  const std::vector<int> pts = rng.distinct(space->size(), k);
  const std::vector<Rat> w = rng.weights(k, den);
  std::vector<Atom> atoms;
  for (int i = 0; i < k; ++i)
    atoms.push_back({pts[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i)]});
  return DiscreteMeasure(space, std::move(atoms));
}

// --------------------------------------------------------------------------

Outcome criterion1_oracle_equivalence() {
  Rng rng(0);
  const std::vector<std::shared_ptr<const MetricSpace>> spaces = {
      line_space({Rat(0), rat(1, 5), rat(1, 2), rat(3, 4), rat(6, 5)}, "x"),
      std::make_shared<const MetricSpace>(MetricSpace::interval_grid(Rat(0), Rat(1), 16)),
      std::make_shared<const MetricSpace>(MetricSpace::compactified_integers(5))};
  long checked = 0;
  for (const auto& sp : spaces) {
    Rng stream = rng.fork("oracle:" + std::to_string(checked));
    for (int t = 0; t < 200; ++t) {
      const DiscreteMeasure mu = random_measure(sp, stream, 6);
      const DiscreteMeasure nu = random_measure(sp, stream, 6);
      if (prohorov_fast(mu, nu) != prohorov_bruteforce(mu, nu) ||
          prohorov_fast(nu, mu) != prohorov_bruteforce(nu, mu))
        return {false, "solver/oracle mismatch on pair " + std::to_string(t)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " random pairs on 3 spaces, exact agreement"};
}

Outcome criterion2_distance_basics() {
  std::vector<Rat> coords;
  for (int i = 0; i < 20; ++i) coords.push_back(rat(i, 7));
  const auto space = line_space(coords, "p");

  long dirac_pairs = 0;
  for (int i = 0; i < space->size(); ++i)
    for (int j = i + 1; j < space->size(); ++j) {
      const Rat want = rat_min(space->dist(i, j), Rat(1));
      if (prohorov_metric(DiscreteMeasure::dirac(space, i),
                          DiscreteMeasure::dirac(space, j)) != want)
        return {false, "dirac pair (" + std::to_string(i) + "," + std::to_string(j) +
                           ") missed min{d,1}"};
      ++dirac_pairs;
    }

  const SystemDef sys = zoo_fig1(16);
  Rng lin_rng = Rng(0).fork("c2:linearity");
  for (int t = 0; t < 100; ++t) {
    std::vector<DiscreteMeasure> parts;
    for (int i = 0; i < 3; ++i) parts.push_back(random_measure(sys.space, lin_rng, 5));
    const std::vector<Rat> w = lin_rng.weights(3, 64);
    const DiscreteMeasure mixed = mix({{w[0], parts[0]}, {w[1], parts[1]}, {w[2], parts[2]}});
    const DiscreteMeasure lhs = push_step(sys, mixed, 0);
    const DiscreteMeasure rhs = mix({{w[0], push_step(sys, parts[0], 0)},
                                     {w[1], push_step(sys, parts[1], 0)},
                                     {w[2], push_step(sys, parts[2], 0)}});
    if (lhs != rhs) return {false, "pushforward linearity broke on mix " + std::to_string(t)};
  }

  Rng mix_rng = Rng(0).fork("c2:mixture");
  for (int t = 0; t < 200; ++t) {
    const DiscreteMeasure mu = random_measure(space, mix_rng, 5);
    const DiscreteMeasure nu = random_measure(space, mix_rng, 5);
    Rat alpha = rat(static_cast<long>(mix_rng.below(65)), 64);
    Rat beta = rat(static_cast<long>(mix_rng.below(65)), 64);
    if (beta < alpha) std::swap(alpha, beta);
    const DiscreteMeasure ma = mix({{alpha, mu}, {Rat(1) - alpha, nu}});
    const DiscreteMeasure mb = mix({{beta, mu}, {Rat(1) - beta, nu}});
    if (prohorov_metric(ma, mb) > beta - alpha)
      return {false, "convexity bound broke on tuple " + std::to_string(t)};
  }

  const DiscreteMeasure da = DiscreteMeasure::dirac(space, 0);
  const DiscreteMeasure db = DiscreteMeasure::dirac(space, 10);
  const DiscreteMeasure half = mix({{rat(1, 2), da}, {rat(1, 2), db}});
  if (prohorov_metric(db, half) != rat(1, 2))
    return {false, "tight mixture case is not exactly 1/2"};

  return {true, std::to_string(dirac_pairs) +
                    " dirac pairs, 100 linear mixes, 200 convexity tuples, tight case 1/2"};
}

Outcome criterion3_constructive_chains() {
  const SystemDef swap_sys = zoo_swap2();
  auto sp = swap_sys.space;
  const DiscreteMeasure mu = DiscreteMeasure::dirac(sp, 0);
  const DiscreteMeasure nu(sp, {{0, rat(1, 4)}, {1, rat(3, 4)}});
  long validated = 0;
  for (const Rat& eps : {rat(1, 2), rat(1, 4)}) {
    const long n_min = chain_min_length(eps);
    for (long k = n_min; k <= n_min + 6; ++k) {
      const GridMeasureChain c = grid_measure_chain(swap_sys, mu, nu, eps, k);
      if (c.measures.front() != mu || c.measures.back() != nu)
        return {false, "swap2 chain endpoints drifted at k = " + std::to_string(k)};
      for (long n = 0; n < k; ++n) {
        const Rat& hop = c.hops[static_cast<std::size_t>(n)];
        if (n < n_min ? !(hop <= eps / 2) : !(hop == 0))
          return {false, "swap2 hop bound broke at k = " + std::to_string(k) +
                             ", n = " + std::to_string(n)};
      }
      ++validated;
    }
  }

  const SystemDef fig_sys = zoo_fig1(8);
  const Rat eps = rat(2, 5);
  const long n_min = chain_min_length(eps);
  Rng rng = Rng(0).fork("c3:fig1");
  for (int t = 0; t < 20; ++t) {
    const auto draw = [&]() {
      const int support = 1 + static_cast<int>(rng.below(4));
      const std::vector<int> pts = rng.distinct(fig_sys.space->size(), support);
      const std::vector<Rat> w = rng.weights(support, 8);
      std::vector<LineAtom> atoms;
      for (int i = 0; i < support; ++i)
        atoms.push_back({fig_sys.space->coord(pts[static_cast<std::size_t>(i)]),
                         w[static_cast<std::size_t>(i)]});
      return line_measure(std::move(atoms));
    };
    const LineMeasure a = draw();
    const LineMeasure b = draw();
    const LineMeasureChain c = line_measure_chain(fig_sys, a, b, eps, n_min + (t % 3));
    if (c.measures.front() != a || c.measures.back() != b)
      return {false, "fig1 chain endpoints drifted on pair " + std::to_string(t)};
    for (std::size_t n = 0; n < c.hops.size(); ++n) {
      if (static_cast<long>(n) < n_min ? !(c.hops[n] <= eps / 2) : !(c.hops[n] == 0))
        return {false, "fig1 hop bound broke on pair " + std::to_string(t)};
    }
    ++validated;
  }
  return {true, std::to_string(validated) + " chains validated with exact endpoints"};
}

Outcome criterion4_nonshadowing() {
  const Thm38Result r = verify_drifting_nonshadowing(rat(1, 10), 12, 1000, rat(1, 4));
  if (!r.holds) return {false, "drift construction failed: " + r.note};
  if (!(r.max_hop <= rat(1, 20)))
    return {false, "a pseudo-orbit hop exceeded 0.05: " + rat_str(r.max_hop)};
  if (!(r.min_over_alpha >= rat(1, 4)))
    return {false, "candidate scan dipped under 0.25: " + rat_str(r.min_over_alpha)};

  const InducedView iv = make_induced_view(zoo_swap2(), 20);
  const ShadowingResult s = decide_shadowing(iv.view, rat(1, 10), rat(6, 25));
  if (s.status != Verdict::Fails)
    return {false, std::string("M_20 decision was ") + verdict_name(s.status)};
  if (!validate_shadowing_witness(iv.view, s.pseudo_orbit, rat(1, 10), rat(6, 25)))
    return {false, "M_20 witness failed revalidation"};
  if (find_shadow_point(iv.view, s.pseudo_orbit, rat(6, 25)) != -1)
    return {false, "a shadow point exists for the M_20 witness"};
  return {true, "hops <= 1/20, alpha scan floor " + rat_str(r.min_over_alpha) +
                    " at alpha = " + rat_str(r.worst_alpha) +
                    ", M_20 fails with a checked witness of length " +
                    std::to_string(s.pseudo_orbit.size())};
}

Outcome criterion5_chain_failure_examples() {
  struct Case {
    const char* name;
    SystemDef (*build)(long);
    Rat from, to, delta;
  };
  const std::vector<Case> cases = {
      {"flat-then-steep", &zoo_ex34, Rat(0), rat(2, 3), rat(3, 10)},
      {"squaring", &zoo_ex35, rat(1, 2), Rat(1), rat(1, 4)}};
  for (const Case& c : cases)
    for (const long q : {16L, 64L}) {
      const SystemDef sys = c.build(q);
      const FiniteView view = make_base_view(sys);
      const int from = sys.space->snap(c.from);
      const int to = sys.space->snap(c.to);
      const ChainSearchResult r = find_chain(view, from, to, c.delta, 4 * q + 16);
      if (r.found)
        return {false, std::string(c.name) + " found a chain at q = " + std::to_string(q)};
      if (!r.closure_certificate)
        return {false, std::string(c.name) + " closure not certified at q = " +
                           std::to_string(q)};
      for (const int s : r.closure)
        if (s == to)
          return {false, std::string(c.name) + " closure touched the target at q = " +
                             std::to_string(q)};
    }

  const FiniteView swap_view = make_base_view(zoo_swap2());
  if (decide_transitive(swap_view).status != Verdict::Holds)
    return {false, "swap2 transitivity did not hold"};
  if (decide_mixing(swap_view).status != Verdict::Fails)
    return {false, "swap2 mixing did not fail"};
  return {true, "both maps trap at q in {16, 64}; swap2 transitive but not mixing"};
}

Outcome criterion6_separation() {
  const Thm22Result r = verify_thm22_separation(rat(1, 5), rat(1, 4), 50, 200, 64, 0);
  if (!r.holds) return {false, r.note};
  if (!(r.max_nonneg_mass <= rat(1, 5)))
    return {false, "a sample put mass " + rat_str(r.max_nonneg_mass) + " on grid-[0,1]"};
  return {true, "200 pushed ball samples stay >= " + rat_str(r.min_margin) +
                    " away over 50 steps; peak grid-[0,1] mass " +
                    rat_str(r.max_nonneg_mass)};
}

Outcome criterion7_sensitivity_inclusion() {
  for (const SystemDef& sys : {zoo_fig1(64), zoo_swap2()}) {
    const Lemma41Result r = verify_lemma41_inclusion(sys, 100, 20, 0);
    if (!r.holds)
      return {false, sys.name + " violated the inclusion at tuple " +
                         std::to_string(r.fail_tuple)};
  }
  return {true, "20 random (x, eps, delta) tuples per system, inclusion exact"};
}

Outcome criterion8_entropy() {
  auto sp = std::make_shared<const MetricSpace>(
      MetricSpace::interval_grid(Rat(0), Rat(1), 19));
  const SystemDef still = autonomous_system(sp, map_identity(), "still");
  const EntropyEstimate e_id = entropy_estimate_system(
      still, time_sequence_integers(8), {rat(1, 8), rat(1, 16)}, {1, 2, 3, 4, 5, 6});
  if (e_id.estimate != 0.0) return {false, "identity entropy came out nonzero"};

  const EntropyEstimate e_swap = entropy_estimate_system(
      zoo_swap2(), time_sequence_integers(8), {rat(1, 2)}, {1, 2, 3, 4, 5, 6});
  if (e_swap.estimate != 0.0) return {false, "swap entropy came out nonzero"};

  const EntropyEstimate e_fig = entropy_estimate_system(
      zoo_fig1(4096), time_sequence_integers(14),
      {rat(1, 8), rat(1, 16), rat(1, 32), rat(1, 64)}, {1, 2, 3, 4, 5, 6, 7, 8});
  if (!(e_fig.estimate > 0.28 && e_fig.estimate < 0.42)) {
    std::ostringstream os;
    os << "fig1 estimate " << e_fig.estimate << " left [0.28, 0.42]";
    return {false, os.str()};
  }

  const GrowthTable growth = induced_entropy_growth(zoo_fig1(8), {1, 2, 3},
                                                    time_sequence_integers(6), rat(1, 8), 3);
  if (!growth.all_ok) return {false, "an induced separated count fell below the base"};

  std::ostringstream os;
  os << "identity and swap exactly 0; fig1 estimate " << e_fig.estimate
     << " in [0.28, 0.42]; embedding inequality on " << growth.rows.size()
     << " measure grids";
  return {true, os.str()};
}

Outcome criterion9_absorption() {
  const Ex56Result r = verify_ex56_convergence(10, {1, 2, 5, 10, 21, 25}, 50, 0);
  if (!r.holds) return {false, r.note};
  return {true, "50 random measures collapse onto the point at infinity by step " +
                    std::to_string(r.absorb_time) + ", checkpoints non-increasing"};
}

Outcome criterion10_determinism() {
  const std::string cmd = std::string("\"") + MEASDYN_CLI_PATH + "\" --omit-timing 2>&1";
  const auto capture = [&]() -> std::pair<int, std::string> {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
  };
  const auto [code1, out1] = capture();
  const auto [code2, out2] = capture();
  if (code1 != 0 || code2 != 0)
    return {false, "suite exited " + std::to_string(code1) + " / " + std::to_string(code2)};
  if (out1 != out2) return {false, "the two suite reports differ"};
  return {true, "full suite ran twice with seed 0: " + std::to_string(out1.size()) +
                    " identical bytes, all verdicts pass"};
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* title;
    double budget_s;  // 0 = no stated budget
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "exact solver matches the enumeration oracle", 30, criterion1_oracle_equivalence},
      {2, "distance basics: diracs, linearity, convexity", 0, criterion2_distance_basics},
      {3, "constructive chains validate at every admissible length", 10,
       criterion3_constructive_chains},
      {4, "drifting measure pseudo-orbit defeats all shadows", 0, criterion4_nonshadowing},
      {5, "chain-failure examples trap; swap transitivity profile", 5,
       criterion5_chain_failure_examples},
      {6, "pushed ball measures stay separated from the two-point average", 60,
       criterion6_separation},
      {7, "measure-level sensitivity times embed into point-level times", 0,
       criterion7_sensitivity_inclusion},
      {8, "entropy: rigid systems at zero, interval map in band, embedding", 120,
       criterion8_entropy},
      {9, "every measure on the compactified walk absorbs at infinity", 5,
       criterion9_absorption},
      {10, "scenario suite is byte-identical across runs", 0, criterion10_determinism},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.run();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.pass && e.budget_s > 0 && secs > e.budget_s) {
      out.pass = false;
      out.detail += " [exceeded " + std::to_string(e.budget_s) + "s budget]";
    }
    if (!out.pass) ++failures;
    std::printf("%s criterion %2d (%.2fs): %s — %s\n", out.pass ? "PASS" : "FAIL", e.number,
                secs, e.title, out.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, entries.size());
  return failures == 0 ? 0 : 1;
}
