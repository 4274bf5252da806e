#pragma once
// Named scenario registry for the harness. Each scenario wires systems,
// measures, and verifiers into a deterministic report: a list of pass/fail
// checks plus witness payloads. Scenarios are pure functions of
// (parameters, seed); reports avoid floats except where estimators are
// double-valued by design.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "measdyn/chains.hpp"
#include "measdyn/deciders.hpp"
#include "measdyn/entropy.hpp"
#include "measdyn/pairstats.hpp"
#include "measdyn/report.hpp"
#include "measdyn/sensitivity.hpp"
#include "measdyn/verify.hpp"

namespace measdyn {

struct ScenarioParams {
  std::map<std::string, std::string> kv;
  std::uint64_t seed = 0;

  bool has(const std::string& key) const { return kv.count(key) != 0; }

  std::string get_str(const std::string& key, const std::string& fallback) const {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  }

  long get_long(const std::string& key, long fallback) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
      std::size_t used = 0;
      const long v = std::stol(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(it->second);
      return v;
    } catch (const std::exception&) {
      throw Error("parameter '" + key + "' expects an integer, got '" + it->second + "'");
    }
  }

  Rat get_rat(const std::string& key, const Rat& fallback) const {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
      return rat_from_string(it->second);
    } catch (const Error&) {
      throw Error("parameter '" + key + "' expects a number, got '" + it->second + "'");
    }
  }
};

struct ScenarioOutcome {
  bool pass = true;
  bool capped = false;
  Json report;
};

struct Scenario {
  std::string name;
  std::string summary;
  std::vector<std::string> params;  // "key=default  effect" lines for --list
  std::function<ScenarioOutcome(const ScenarioParams&)> run;
};

namespace scen {

class Checks {
 public:
  void add(const std::string& name, bool ok, const Json& details = Json::object()) {
    Json row = Json::object();
    row["name"] = name;
    row["pass"] = ok;
    for (auto it = details.begin(); it != details.end(); ++it) row[it.key()] = it.value();
    rows_.push_back(std::move(row));
    all_ = all_ && ok;
  }
  bool all() const { return all_; }
  const Json& rows() const { return rows_; }

 private:
  Json rows_ = Json::array();
  bool all_ = true;
};

inline ScenarioOutcome finish(const std::string& name, std::uint64_t seed,
                              const Json& params_echo, const Checks& checks,
                              const Json& extra = Json::object(), bool capped = false) {
  ScenarioOutcome out;
  out.capped = capped;
  out.pass = checks.all() && !capped;
  Json r = Json::object();
  r["scenario"] = name;
  r["seed"] = std::to_string(seed);
  r["params"] = params_echo;
  r["verdict"] = capped ? "unknown" : (checks.all() ? "pass" : "fail");
  if (capped) r["capped"] = true;
  r["checks"] = checks.rows();
  for (auto it = extra.begin(); it != extra.end(); ++it) r[it.key()] = it.value();
  out.report = std::move(r);
  return out;
}

inline DiscreteMeasure random_measure(const std::shared_ptr<const MetricSpace>& space, Rng& rng,
                                      int max_support, long den = 40) {
  const int cap = std::min<int>(max_support, space->size());
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap)));
  const std::vector<int> pts = rng.distinct(space->size(), k);
  const std::vector<Rat> w = rng.weights(k, den);
  std::vector<Atom> atoms;
  for (int i = 0; i < k; ++i) atoms.push_back({pts[static_cast<std::size_t>(i)],
                                               w[static_cast<std::size_t>(i)]});
  return DiscreteMeasure(space, std::move(atoms));
}

// 20-point finite space with d(i,j) = |i-j|/7, so distances straddle 1 and
// the Dirac identity min{d,1} gets exercised on both sides of the clip.
inline std::shared_ptr<const MetricSpace> long_line_space() {
  std::vector<std::string> labels;
  std::vector<Rat> dmat;
  for (int i = 0; i < 20; ++i) labels.push_back("p" + std::to_string(i));
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) dmat.push_back(rat(std::abs(i - j), 7));
  return std::make_shared<const MetricSpace>(
      MetricSpace::finite_table(std::move(labels), std::move(dmat)));
}

// Round each cumulative weight to the nearest multiple of 1/den; the result
// is a measure with den-grid weights within support/den in Prohorov distance.
inline DiscreteMeasure quantize_weights(const DiscreteMeasure& m, long den) {
  std::vector<Atom> atoms;
  Rat cum(0), prev(0);
  for (const Atom& a : m.atoms()) {
    cum += a.weight;
    const Rat snapped = rat(rat_floor(cum * den + rat(1, 2)), den);
    atoms.push_back({a.point, snapped - prev});
    prev = snapped;
  }
  return DiscreteMeasure(m.space_ptr(), std::move(atoms));
}

// ---------------------------------------------------------------------------

inline ScenarioOutcome scn_lemma21(const ScenarioParams& p) {
  const long trials = p.get_long("trials", 200);
  const long mixes = p.get_long("mixes", 100);
  const long quantize_trials = p.get_long("quantize_trials", 20);
  const long grid = p.get_long("grid", 16);
  Json params = Json::object();
  params["trials"] = trials;
  params["mixes"] = mixes;
  params["quantize_trials"] = quantize_trials;
  params["grid"] = grid;

  Checks checks;
  const auto space = long_line_space();
  Rng rng = Rng(p.seed).fork("lemma21");

  {  // Dirac pairs realize min{d, 1} exactly.
    bool ok = true;
    long clipped = 0;
    for (int i = 0; i < space->size() && ok; ++i)
      for (int j = i + 1; j < space->size() && ok; ++j) {
        const Rat want = rat_min(space->dist(i, j), Rat(1));
        if (space->dist(i, j) > 1) ++clipped;
        ok = prohorov_metric(DiscreteMeasure::dirac(space, i),
                             DiscreteMeasure::dirac(space, j)) == want;
      }
    Json d = Json::object();
    d["pairs"] = space->size() * (space->size() - 1) / 2;
    d["clipped_pairs"] = clipped;
    checks.add("dirac_distance_is_min_d_1", ok, d);
  }

  {  // Weight grids are dense: quantizing weights to 1/210 moves the measure
     // by at most support/210.
    bool ok = true;
    Rat worst(0);
    Rng r2 = rng.fork("quantize");
    for (long t = 0; t < quantize_trials && ok; ++t) {
      const DiscreteMeasure mu = random_measure(space, r2, 6, 40);
      const DiscreteMeasure nu = quantize_weights(mu, 210);
      const Rat d = prohorov_metric(mu, nu);
      worst = rat_max(worst, d);
      ok = d <= rat(mu.support_size(), 210);
    }
    Json d = Json::object();
    d["den"] = 210;
    d["worst_move"] = rat_str(worst);
    checks.add("weight_grid_density", ok, d);
  }

  {  // Pushforwards act linearly on mixtures.
    const SystemDef sys = zoo_fig1(grid);
    bool ok = true;
    Rng r2 = rng.fork("linearity");
    for (long t = 0; t < mixes && ok; ++t) {
      std::vector<DiscreteMeasure> parts;
      for (int i = 0; i < 3; ++i) parts.push_back(random_measure(sys.space, r2, 5, 40));
      const std::vector<Rat> w = r2.weights(3, 64);
      const DiscreteMeasure mixed =
          mix({{w[0], parts[0]}, {w[1], parts[1]}, {w[2], parts[2]}});
      const DiscreteMeasure lhs = push_step(sys, mixed, 0);
      const DiscreteMeasure rhs = mix({{w[0], push_step(sys, parts[0], 0)},
                                       {w[1], push_step(sys, parts[1], 0)},
                                       {w[2], push_step(sys, parts[2], 0)}});
      ok = lhs == rhs;
    }
    Json d = Json::object();
    d["mixes"] = mixes;
    checks.add("pushforward_linearity", ok, d);
  }

  {  // Two mixtures of the same pair are within |beta - alpha|.
    bool ok = true;
    Rng r2 = rng.fork("mixture");
    for (long t = 0; t < trials && ok; ++t) {
      const DiscreteMeasure mu = random_measure(space, r2, 5, 40);
      const DiscreteMeasure nu = random_measure(space, r2, 5, 40);
      Rat alpha = rat(static_cast<long>(r2.below(65)), 64);
      Rat beta = rat(static_cast<long>(r2.below(65)), 64);
      if (beta < alpha) std::swap(alpha, beta);
      const DiscreteMeasure ma = mix({{alpha, mu}, {Rat(1) - alpha, nu}});
      const DiscreteMeasure mb = mix({{beta, mu}, {Rat(1) - beta, nu}});
      ok = prohorov_metric(ma, mb) <= beta - alpha;
    }
    Json d = Json::object();
    d["trials"] = trials;
    checks.add("mixture_distance_bound", ok, d);
  }

  {  // Tight case: a half/half mixture with a far Dirac sits at exactly 1/2.
    const DiscreteMeasure da = DiscreteMeasure::dirac(space, 0);
    const DiscreteMeasure db = DiscreteMeasure::dirac(space, 10);
    const DiscreteMeasure half = mix({{rat(1, 2), da}, {rat(1, 2), db}});
    const Rat got = prohorov_metric(db, half);
    Json d = Json::object();
    d["distance"] = rat_str(got);
    d["endpoint_gap"] = rat_str(space->dist(0, 10));
    checks.add("mixture_bound_tight_case", got == rat(1, 2), d);
  }

  return finish("lemma21", p.seed, params, checks);
}

inline ScenarioOutcome scn_prohorov_oracle(const ScenarioParams& p) {
  const long pairs = p.get_long("pairs", 200);
  const long support = p.get_long("support", 6);
  const long triples = p.get_long("triples", 30);
  const long grid = p.get_long("grid", 16);
  const long compact_n = p.get_long("compact_n", 5);
  Json params = Json::object();
  params["pairs"] = pairs;
  params["support"] = support;
  params["triples"] = triples;
  params["grid"] = grid;
  params["compact_n"] = compact_n;

  std::vector<std::pair<std::string, std::shared_ptr<const MetricSpace>>> spaces;
  {
    const std::vector<Rat> coords{rat(0), rat(1, 5), rat(1, 2), rat(3, 4), rat(6, 5)};
    std::vector<std::string> labels{"a", "b", "c", "d", "e"};
    std::vector<Rat> dmat;
    for (const Rat& x : coords)
      for (const Rat& y : coords) dmat.push_back(rat_abs(x - y));
    spaces.emplace_back("finite5", std::make_shared<const MetricSpace>(MetricSpace::finite_table(
                                       std::move(labels), std::move(dmat))));
  }
  spaces.emplace_back("interval", std::make_shared<const MetricSpace>(
                                      MetricSpace::interval_grid(rat(0), rat(1), grid)));
  spaces.emplace_back("compactified", std::make_shared<const MetricSpace>(
                                          MetricSpace::compactified_integers(compact_n)));

  Checks checks;
  Rng base = Rng(p.seed).fork("prohorov_oracle");
  for (const auto& [name, space] : spaces) {
    Rng rng = base.fork(name);
    bool oracle_ok = true, sym_ok = true;
    for (long t = 0; t < pairs && oracle_ok && sym_ok; ++t) {
      const DiscreteMeasure mu = random_measure(space, rng, static_cast<int>(support));
      const DiscreteMeasure nu = random_measure(space, rng, static_cast<int>(support));
      const Rat fwd = prohorov_fast(mu, nu);
      const Rat bwd = prohorov_fast(nu, mu);
      oracle_ok = fwd == prohorov_bruteforce(mu, nu) && bwd == prohorov_bruteforce(nu, mu);
      sym_ok = fwd == bwd;
    }
    Json d = Json::object();
    d["pairs"] = pairs;
    checks.add(name + "_fast_equals_bruteforce", oracle_ok, d);
    checks.add(name + "_one_sided_symmetric", sym_ok, Json::object());

    bool ident_ok = true;
    for (long t = 0; t < 50 && ident_ok; ++t) {
      const DiscreteMeasure mu = random_measure(space, rng, static_cast<int>(support));
      const DiscreteMeasure nu = random_measure(space, rng, static_cast<int>(support));
      ident_ok = prohorov_metric(mu, mu) == 0 && (mu == nu || prohorov_metric(mu, nu) > 0);
    }
    checks.add(name + "_identity_of_indiscernibles", ident_ok, Json::object());

    bool tri_ok = true;
    for (long t = 0; t < triples && tri_ok; ++t) {
      const DiscreteMeasure a = random_measure(space, rng, static_cast<int>(support));
      const DiscreteMeasure b = random_measure(space, rng, static_cast<int>(support));
      const DiscreteMeasure c = random_measure(space, rng, static_cast<int>(support));
      tri_ok = prohorov_metric(a, c) <= prohorov_metric(a, b) + prohorov_metric(b, c);
    }
    Json dt = Json::object();
    dt["triples"] = triples;
    checks.add(name + "_triangle_inequality", tri_ok, dt);
  }

  return finish("prohorov_oracle", p.seed, params, checks);
}

// Shared validation for a constructed chain on the two-point swap system.
inline ScenarioOutcome scn_thm33_swap2(const ScenarioParams& p) {
  const long kspread = p.get_long("kspread", 6);
  Json params = Json::object();
  params["kspread"] = kspread;

  const SystemDef sys = zoo_swap2();
  const DiscreteMeasure da = DiscreteMeasure::dirac(sys.space, 0);
  const DiscreteMeasure db = DiscreteMeasure::dirac(sys.space, 1);

  Checks checks;
  Json rows = Json::array();
  for (const Rat& eps : {rat(1, 2), rat(1, 4)}) {
    const long n_min = chain_min_length(eps);
    bool ok = true;
    for (long k = n_min; k <= n_min + kspread; ++k) {
      const GridMeasureChain chain = grid_measure_chain(sys, da, db, eps, k);
      bool len_ok = static_cast<long>(chain.measures.size()) == k + 1;
      bool ends_ok = chain.measures.front() == da && chain.measures.back() == db;
      Rat max_interp(0);
      bool hops_ok = true, tail_ok = true;
      for (long n = 0; n < k; ++n) {
        const Rat& hop = chain.hops[static_cast<std::size_t>(n)];
        if (n < n_min) {
          max_interp = rat_max(max_interp, hop);
          hops_ok = hops_ok && hop <= eps / 2;
        } else {
          tail_ok = tail_ok && hop == 0;
        }
      }
      ok = ok && len_ok && ends_ok && hops_ok && tail_ok;
      Json row = Json::object();
      row["eps"] = rat_str(eps);
      row["k"] = k;
      row["max_interp_hop"] = rat_str(max_interp);
      row["tail_zero"] = tail_ok;
      rows.push_back(std::move(row));
    }
    Json d = Json::object();
    d["n_min"] = n_min;
    d["k_max"] = n_min + kspread;
    checks.add("dirac_chains_valid_eps_" + rat_str(eps), ok, d);
  }

  {  // A non-Dirac pair goes through the same construction.
    const DiscreteMeasure mu(sys.space, {{0, rat(3, 4)}, {1, rat(1, 4)}});
    const DiscreteMeasure nu(sys.space, {{0, rat(1, 8)}, {1, rat(7, 8)}});
    bool ok = true;
    for (const Rat& eps : {rat(1, 2), rat(1, 4)}) {
      const long n_min = chain_min_length(eps);
      const GridMeasureChain chain = grid_measure_chain(sys, mu, nu, eps, n_min);
      ok = ok && chain.measures.front() == mu && chain.measures.back() == nu;
      for (long n = 0; n < n_min; ++n)
        ok = ok && chain.hops[static_cast<std::size_t>(n)] <= eps / 2;
    }
    checks.add("mixed_pair_chains_valid", ok, Json::object());
  }

  {  // Too-short lengths are rejected up front.
    bool threw = false;
    std::string message;
    try {
      grid_measure_chain(sys, da, db, rat(1, 2), 3);
    } catch (const Error& e) {
      threw = true;
      message = e.what();
    }
    Json d = Json::object();
    d["message"] = message;
    checks.add("short_chain_rejected", threw && message.find("too short") != std::string::npos,
               d);
  }

  Json extra = Json::object();
  extra["chains"] = rows;
  return finish("thm33_swap2", p.seed, params, checks, extra);
}

inline ScenarioOutcome scn_thm33_fig1(const ScenarioParams& p) {
  const long grid = p.get_long("grid", 8);
  const long pairs = p.get_long("pairs", 20);
  const long kspread = p.get_long("kspread", 3);
  const Rat eps = p.get_rat("eps", rat(2, 5));
  Json params = Json::object();
  params["grid"] = grid;
  params["pairs"] = pairs;
  params["kspread"] = kspread;
  params["eps"] = rat_str(eps);

  // Chains run on exact line measures; the grid only seeds the endpoints.
  // The map is onto [-1,1] as a line map, so exact preimages always exist,
  // while the grid-snapped map misses some odd grid points.
  const SystemDef sys = zoo_fig1(grid);
  const long n_min = chain_min_length(eps);
  Rng rng = Rng(p.seed).fork("thm33_fig1");

  const auto random_line_measure = [&](Rng& r) {
    const int k = 1 + static_cast<int>(r.below(4));
    const std::vector<int> pts = r.distinct(sys.space->size(), k);
    const std::vector<Rat> w = r.weights(k, 8);
    std::vector<LineAtom> atoms;
    for (int i = 0; i < k; ++i)
      atoms.push_back({sys.space->coord(pts[static_cast<std::size_t>(i)]),
                       w[static_cast<std::size_t>(i)]});
    return line_measure(std::move(atoms));
  };

  Checks checks;
  bool ok = true;
  Rat max_interp(0);
  for (long t = 0; t < pairs && ok; ++t) {
    const LineMeasure mu = random_line_measure(rng);
    const LineMeasure nu = random_line_measure(rng);
    for (const long k : {n_min, n_min + kspread}) {
      const LineMeasureChain chain = line_measure_chain(sys, mu, nu, eps, k);
      ok = ok && static_cast<long>(chain.measures.size()) == k + 1;
      ok = ok && chain.measures.front() == mu && chain.measures.back() == nu;
      for (long n = 0; n < k && ok; ++n) {
        const Rat& hop = chain.hops[static_cast<std::size_t>(n)];
        if (n < n_min) {
          max_interp = rat_max(max_interp, hop);
          ok = hop <= eps / 2;
        } else {
          ok = hop == 0;
        }
      }
    }
  }
  Json d = Json::object();
  d["pairs"] = pairs;
  d["n_min"] = n_min;
  d["max_interp_hop"] = rat_str(max_interp);
  checks.add("random_pair_chains_valid", ok, d);

  return finish("thm33_fig1", p.seed, params, checks);
}

inline ScenarioOutcome scn_thm38_nonshadowing(const ScenarioParams& p) {
  const Rat delta = p.get_rat("delta", rat(1, 10));
  const long n0 = p.get_long("n0", 12);
  const long alpha_den = p.get_long("alpha_den", 1000);
  const Rat floor_bound = p.get_rat("floor", rat(1, 4));
  const long meas_grid = p.get_long("meas_grid", 20);
  const Rat eps = p.get_rat("eps", rat(6, 25));
  Json params = Json::object();
  params["delta"] = rat_str(delta);
  params["n0"] = n0;
  params["alpha_den"] = alpha_den;
  params["floor"] = rat_str(floor_bound);
  params["meas_grid"] = meas_grid;
  params["eps"] = rat_str(eps);

  Checks checks;
  const Thm38Result r = verify_drifting_nonshadowing(delta, n0, alpha_den, floor_bound);
  {
    Json d = Json::object();
    d["max_hop"] = rat_str(r.max_hop);
    d["bound"] = rat_str(delta / 2);
    checks.add("pseudo_orbit_hops_bounded", r.max_hop <= delta / 2, d);
  }
  {
    Json d = Json::object();
    d["min_over_alpha"] = rat_str(r.min_over_alpha);
    d["worst_alpha"] = rat_str(r.worst_alpha);
    d["note"] = r.note;
    checks.add("alpha_scan_stays_above_floor", r.holds, d);
  }

  const SystemDef sys = zoo_swap2();
  const InducedView iv = make_induced_view(sys, meas_grid);
  const ShadowingResult sr = decide_shadowing(iv.view, delta, eps);
  {
    Json d = Json::object();
    d["states"] = iv.view.n_states;
    d["explored"] = sr.explored;
    d["witness_length"] = static_cast<long>(sr.pseudo_orbit.size());
    checks.add("induced_shadowing_fails", sr.status == Verdict::Fails, d);
  }
  checks.add("witness_revalidates",
             validate_shadowing_witness(iv.view, sr.pseudo_orbit, delta, eps), Json::object());

  Json extra = Json::object();
  extra["witness"] = shadowing_json(sr, iv.view);
  return finish("thm38_nonshadowing", p.seed, params, checks, extra);
}

inline ScenarioOutcome run_no_chain(const std::string& name, const ScenarioParams& p,
                                    const std::function<SystemDef(long)>& zoo,
                                    const Rat& from_coord, const Rat& to_coord,
                                    const Rat& default_delta, const Rat& trap_bound) {
  const Rat delta = p.get_rat("delta", default_delta);
  const long grid = p.get_long("grid", 0);
  Json params = Json::object();
  params["delta"] = rat_str(delta);
  params["grid"] = grid == 0 ? Json("16,64") : Json(grid);

  std::vector<long> qs = grid == 0 ? std::vector<long>{16, 64} : std::vector<long>{grid};
  Checks checks;
  Json closures = Json::object();
  for (const long q : qs) {
    const SystemDef sys = zoo(q);
    const FiniteView view = make_base_view(sys);
    const int from = sys.space->snap(from_coord);
    const int to = sys.space->snap(to_coord);
    const long max_len = p.get_long("max_len", 4 * q + 16);
    const ChainSearchResult r = find_chain(view, from, to, delta, max_len);
    const std::string tag = "q" + std::to_string(q);

    Json d = Json::object();
    d["from"] = view.label(from);
    d["to"] = view.label(to);
    d["max_len"] = max_len;
    checks.add(tag + "_chain_absent", !r.found, d);

    Json dc = Json::object();
    dc["closure_size"] = static_cast<long>(r.closure.size());
    dc["note"] = r.note;
    checks.add(tag + "_closure_certified", r.closure_certificate, dc);

    Rat worst(0);
    bool trapped = true;
    Json labels = Json::array();
    for (const int s : r.closure) {
      worst = rat_max(worst, sys.space->coord(s));
      trapped = trapped && sys.space->coord(s) < trap_bound && s != to;
      labels.push_back(view.label(s));
    }
    Json db = Json::object();
    db["closure_max"] = rat_str(worst);
    db["trap_bound"] = rat_str(trap_bound);
    checks.add(tag + "_closure_trapped", trapped, db);
    closures[tag] = labels;
  }

  Json extra = Json::object();
  extra["closures"] = closures;
  return finish(name, p.seed, params, checks, extra);
}

inline ScenarioOutcome scn_ex34_no_chain(const ScenarioParams& p) {
  return run_no_chain("ex34_no_chain", p, [](long q) { return zoo_ex34(q); }, rat(0),
                      rat(2, 3), rat(3, 10), rat(3, 10));
}

inline ScenarioOutcome scn_ex35_no_chain(const ScenarioParams& p) {
  return run_no_chain("ex35_no_chain", p, [](long q) { return zoo_ex35(q); }, rat(1, 2),
                      rat(1), rat(1, 4), rat(1, 2));
}

inline ScenarioOutcome scn_swap2_properties(const ScenarioParams& p) {
  const long horizon = p.get_long("horizon", 6);
  Json params = Json::object();
  params["horizon"] = horizon;

  const SystemDef sys = zoo_swap2();
  const FiniteView view = make_base_view(sys);
  Checks checks;

  const TransitivityResult tr = decide_transitive(view);
  {
    Json d = Json::object();
    d["note"] = tr.note;
    checks.add("transitive_holds", tr.status == Verdict::Holds, d);
  }
  const MixingResult mx = decide_mixing(view);
  {
    Json d = Json::object();
    d["note"] = mx.note;
    checks.add("mixing_fails", mx.status == Verdict::Fails, d);
  }
  {
    const std::vector<long> ab = hitting_times(view, {0}, {1}, horizon);
    const std::vector<long> aa = hitting_times(view, {0}, {0}, horizon);
    Json d = Json::object();
    d["a_to_b"] = ab;
    d["a_to_a"] = aa;
    const bool ok = ab == std::vector<long>{1, 3, 5} && aa == std::vector<long>{2, 4, 6};
    checks.add("hitting_times_alternate", ok, d);
  }
  {
    const WeakMixingResult wm = decide_weak_mixing_order(view, 2);
    Json d = Json::object();
    d["note"] = wm.note;
    checks.add("weak_mixing_order2_fails", wm.status == Verdict::Fails, d);
  }

  return finish("swap2_properties", p.seed, params, checks);
}

inline ScenarioOutcome scn_thm22_separation(const ScenarioParams& p) {
  const Rat eps0 = p.get_rat("eps0", rat(1, 5));
  const Rat eps = p.get_rat("eps", rat(1, 4));
  const long horizon = p.get_long("horizon", 50);
  const long samples = p.get_long("samples", 200);
  const long grid = p.get_long("grid", 64);
  Json params = Json::object();
  params["eps0"] = rat_str(eps0);
  params["eps"] = rat_str(eps);
  params["horizon"] = horizon;
  params["samples"] = samples;
  params["grid"] = grid;

  Checks checks;
  const Thm22Result r = verify_thm22_separation(eps0, eps, horizon, samples, grid, p.seed);
  {
    Json d = Json::object();
    d["min_margin"] = rat_str(r.min_margin);
    d["samples"] = r.samples;
    d["note"] = r.note;
    checks.add("orbit_stays_separated", r.holds, d);
  }
  {
    Json d = Json::object();
    d["max_nonneg_mass"] = rat_str(r.max_nonneg_mass);
    d["bound"] = rat_str(eps0);
    checks.add("ball_mass_bounded", r.max_nonneg_mass <= eps0, d);
  }
  {  // The ball center itself keeps distance exactly 1/2 from the two-point
     // mixture along its whole orbit.
    const Thm22Context ctx = make_thm22_context(grid);
    bool ok = true;
    DiscreteMeasure cur = ctx.mu1;
    for (long n = 0; n <= 12 && ok; ++n) {
      ok = prohorov_metric(cur, ctx.mu2) == rat(1, 2);
      cur = push_step(ctx.sys, cur, n);
    }
    checks.add("center_margin_exactly_half", ok, Json::object());
  }

  return finish("thm22_separation", p.seed, params, checks);
}

inline ScenarioOutcome scn_lemma41_inclusion(const ScenarioParams& p) {
  const long tuples = p.get_long("tuples", 20);
  const long horizon = p.get_long("horizon", 100);
  const long grid = p.get_long("grid", 64);
  Json params = Json::object();
  params["tuples"] = tuples;
  params["horizon"] = horizon;
  params["grid"] = grid;

  Checks checks;
  const std::vector<std::pair<std::string, SystemDef>> systems{
      {"fig1", zoo_fig1(grid)}, {"swap2", zoo_swap2()}};
  for (const auto& [name, sys] : systems) {
    const Lemma41Result r = verify_lemma41_inclusion(sys, horizon, tuples, p.seed);
    Json d = Json::object();
    d["tuples"] = r.tuples;
    d["note"] = r.note;
    checks.add(name + "_measure_times_inside_base_times", r.holds, d);
  }
  return finish("lemma41_inclusion", p.seed, params, checks);
}

inline ScenarioOutcome scn_entropy_flat(const ScenarioParams& p) {
  const long grid = p.get_long("grid", 19);
  Json params = Json::object();
  params["grid"] = grid;

  Checks checks;
  const TimeSequence A = time_sequence_integers(10);
  const std::vector<Rat> eps_list{rat(1, 8), rat(1, 4)};
  const std::vector<long> n_list{1, 2, 3, 4, 5, 6};

  {
    auto space = std::make_shared<const MetricSpace>(
        MetricSpace::interval_grid(rat(0), rat(1), grid));
    const SystemDef sys = autonomous_system(space, map_identity(), "still");
    const EntropyEstimate est = entropy_estimate_system(sys, A, eps_list, n_list);
    Json d = Json::object();
    d["estimate"] = est.estimate;
    checks.add("identity_entropy_zero", est.estimate == 0.0, d);
  }
  {
    const SystemDef sys = zoo_swap2();
    const EntropyEstimate greedy = entropy_estimate_system(sys, A, eps_list, n_list);
    const EntropyEstimate exact =
        entropy_estimate_system(sys, A, eps_list, n_list, {}, "exact");
    Json d = Json::object();
    d["greedy"] = greedy.estimate;
    d["exact"] = exact.estimate;
    checks.add("swap2_entropy_zero", greedy.estimate == 0.0 && exact.estimate == 0.0, d);
  }

  return finish("entropy_flat", p.seed, params, checks);
}

inline ScenarioOutcome scn_entropy_fig1(const ScenarioParams& p) {
  const long grid = p.get_long("grid", 4096);
  const Rat band_lo = p.get_rat("band_lo", rat(28, 100));
  const Rat band_hi = p.get_rat("band_hi", rat(42, 100));
  Json params = Json::object();
  params["grid"] = grid;
  params["band_lo"] = rat_str(band_lo);
  params["band_hi"] = rat_str(band_hi);

  Checks checks;
  if (grid > 65536) {
    checks.add("grid_within_cap", false, Json::object());
    return finish("entropy_fig1", p.seed, params, checks, Json::object(), true);
  }

  const SystemDef sys = zoo_fig1(grid);
  const TimeSequence A = time_sequence_integers(14);
  const std::vector<Rat> eps_list{rat(1, 8), rat(1, 16), rat(1, 32), rat(1, 64)};
  const std::vector<long> n_list{1, 2, 3, 4, 5, 6, 7, 8};
  const EntropyEstimate est = entropy_estimate_system(sys, A, eps_list, n_list);

  {
    Json d = Json::object();
    d["estimate"] = est.estimate;
    d["band"] = rat_str(band_lo) + ".." + rat_str(band_hi);
    const double lo = to_double(band_lo), hi = to_double(band_hi);
    checks.add("estimate_in_band", est.estimate >= lo && est.estimate <= hi, d);
  }
  {
    bool mono = true;
    for (std::size_t i = 1; i < est.rows.size(); ++i)
      if (est.rows[i].eps == est.rows[i - 1].eps && est.rows[i].s_n < est.rows[i - 1].s_n)
        mono = false;
    checks.add("separated_counts_monotone", mono, Json::object());
  }

  Json extra = Json::object();
  extra["entropy"] = entropy_json(est);
  return finish("entropy_fig1", p.seed, params, checks, extra);
}

inline ScenarioOutcome scn_entropy_embedding(const ScenarioParams& p) {
  const long grid = p.get_long("grid", 16);
  const long meas_grid = p.get_long("meas_grid", 2);
  Json params = Json::object();
  params["grid"] = grid;
  params["meas_grid"] = meas_grid;

  const SystemDef sys = zoo_fig1(grid);
  const FiniteView base = make_base_view(sys);
  const InducedView induced = make_induced_view(sys, meas_grid);
  const TimeSequence A = time_sequence_integers(10);

  // Dirac states of the induced system, then the rest; the greedy scan then
  // keeps at least one measure per separated base point.
  std::vector<int> dirac_sample, full_sample;
  for (int i = 0; i < induced.view.n_states; ++i)
    if (induced.states[static_cast<std::size_t>(i)].support_size() == 1)
      dirac_sample.push_back(i);
  full_sample = dirac_sample;
  for (int i = 0; i < induced.view.n_states; ++i)
    if (induced.states[static_cast<std::size_t>(i)].support_size() != 1)
      full_sample.push_back(i);
  std::vector<int> base_sample;
  for (int i = 0; i < base.n_states; ++i) base_sample.push_back(i);

  Checks checks;
  Json rows = Json::array();
  bool embed_ok = true, dominate_ok = true;
  for (const Rat& eps : {rat(1, 8), rat(1, 4)}) {
    for (long n = 1; n <= 6; ++n) {
      const long s_base = separated_set(base, base_sample, n, eps, A, "exact").count;
      const long s_dirac =
          separated_set(induced.view, dirac_sample, n, eps, A, "exact").count;
      const long s_full =
          separated_set(induced.view, full_sample, n, eps, A, "greedy").count;
      embed_ok = embed_ok && s_dirac == s_base;
      dominate_ok = dominate_ok && s_full >= s_base;
      Json row = Json::object();
      row["eps"] = rat_str(eps);
      row["n"] = n;
      row["s_base"] = s_base;
      row["s_dirac"] = s_dirac;
      row["s_induced"] = s_full;
      rows.push_back(std::move(row));
    }
  }
  checks.add("dirac_embedding_preserves_counts", embed_ok, Json::object());
  Json d = Json::object();
  d["induced_states"] = induced.view.n_states;
  checks.add("induced_counts_dominate_base", dominate_ok, d);

  Json extra = Json::object();
  extra["counts"] = rows;
  return finish("entropy_embedding", p.seed, params, checks, extra);
}

inline ScenarioOutcome scn_ex56_convergence(const ScenarioParams& p) {
  const long n_max = p.get_long("n_max", 10);
  const long samples = p.get_long("samples", 50);
  Json params = Json::object();
  params["n_max"] = n_max;
  params["samples"] = samples;

  Checks checks;
  const std::vector<long> checkpoints{1, 2, 5, 10, 21, 25};
  const Ex56Result r = verify_ex56_convergence(n_max, checkpoints, samples, p.seed);
  Json d = Json::object();
  d["absorb_time"] = r.absorb_time;
  d["samples"] = r.samples;
  d["note"] = r.note;
  checks.add("everything_absorbs_at_point_at_infinity", r.holds, d);
  return finish("ex56_convergence", p.seed, params, checks);
}

inline ScenarioOutcome scn_lemma25_uniform(const ScenarioParams& p) {
  const long grid = p.get_long("grid", 180);
  const long mmax = p.get_long("mmax", 6);
  const long trials = p.get_long("trials", 20);
  Json params = Json::object();
  params["grid"] = grid;
  params["mmax"] = mmax;
  params["trials"] = trials;

  auto space = std::make_shared<const MetricSpace>(
      MetricSpace::interval_grid(rat(0), rat(1), grid));
  Checks checks;
  Json rows = Json::array();

  std::vector<Rat> base_dists;
  for (long m = 1; m <= mmax; ++m)
    base_dists.push_back(uniform_distance(*space, fm_map(m), map_identity()));

  {  // On the default grid the distances come out exactly: 2/3 for m = 1
     // (the single up-node travels to 1), then 1/m.
    bool ok = true;
    if (grid == 180 && mmax >= 6) {
      const std::vector<Rat> frozen{rat(2, 3), rat(1, 2), rat(1, 3),
                                    rat(1, 4), rat(1, 5), rat(1, 6)};
      for (std::size_t i = 0; i < frozen.size(); ++i) ok = ok && base_dists[i] == frozen[i];
    } else {
      for (long m = 2; m <= mmax; ++m)
        ok = ok && base_dists[static_cast<std::size_t>(m - 1)] <= rat(1, m) + rat(1, grid);
    }
    Json d = Json::object();
    Json vals = Json::array();
    for (const Rat& v : base_dists) vals.push_back(rat_str(v));
    d["distances"] = vals;
    checks.add("uniform_distances_to_identity", ok, d);
  }
  {
    bool mono = true;
    for (std::size_t i = 1; i < base_dists.size(); ++i)
      mono = mono && base_dists[i] <= base_dists[i - 1];
    checks.add("distances_shrink_with_m", mono, Json::object());
  }
  {  // Induced maps move every measure by at most the base uniform distance.
    Rng rng = Rng(p.seed).fork("lemma25");
    std::vector<DiscreteMeasure> sample;
    for (int i = 0; i < space->size(); i += space->size() / 6)
      sample.push_back(DiscreteMeasure::dirac(space, i));
    for (long t = 0; t < trials; ++t) sample.push_back(random_measure(space, rng, 5, 40));
    bool ok = true;
    for (long m = 1; m <= std::min<long>(mmax, 4); ++m) {
      const Rat induced =
          induced_uniform_distance(*space, fm_map(m), map_identity(), sample);
      ok = ok && induced <= base_dists[static_cast<std::size_t>(m - 1)];
      Json row = Json::object();
      row["m"] = m;
      row["base"] = rat_str(base_dists[static_cast<std::size_t>(m - 1)]);
      row["induced_sample"] = rat_str(induced);
      rows.push_back(std::move(row));
    }
    checks.add("induced_bounded_by_base", ok, Json::object());
  }

  Json extra = Json::object();
  extra["uniform_distances"] = rows;
  return finish("lemma25_uniform", p.seed, params, checks, extra);
}

inline ScenarioOutcome scn_thm27_circle(const ScenarioParams& p) {
  const long grid = p.get_long("grid", 10946);
  const long words = p.get_long("words", 32);
  const Rat eps0 = p.get_rat("eps0", rat(1, 8));
  const Rat eps1 = p.get_rat("eps1", rat(1, 12));
  Json params = Json::object();
  params["grid"] = grid;
  params["words"] = words;
  params["eps0"] = rat_str(eps0);
  params["eps1"] = rat_str(eps1);

  Checks checks;
  const CircleObstructionResult r = verify_circle_obstruction(grid, words, eps0, eps1);
  {
    Json d = Json::object();
    d["horizon"] = r.horizon;
    checks.add("no_word_spreads_all_three_balls", r.six_hit_time < 0, d);
  }
  {
    Json d = Json::object();
    d["double_hit_time"] = r.double_hit_time;
    d["note"] = r.note;
    checks.add("some_word_spreads_one_ball", r.double_hit_time >= 0, d);
  }
  checks.add("obstruction_holds", r.holds, Json::object());
  return finish("thm27_circle", p.seed, params, checks);
}

inline ScenarioOutcome scn_pairstats_zshift(const ScenarioParams& p) {
  const long n_max = p.get_long("n_max", 50);
  const long horizon = p.get_long("horizon", 60);
  const long grid = p.get_long("grid", 256);
  Json params = Json::object();
  params["n_max"] = n_max;
  params["horizon"] = horizon;
  params["grid"] = grid;

  Checks checks;
  Json extra = Json::object();
  {
    const SystemDef sys = zoo_zshift(n_max);
    const int x = sys.space->compactified_index(0);
    const int y = sys.space->compactified_index(5);
    const PairStats st =
        pair_stats(sys, x, y, horizon, {rat(1, 100), rat(1, 10), rat(1, 2)});
    {
      // Distances are recorded from time 1 on; the first entry d(1, 6) is
      // already the largest and everything shrinks from there.
      const Rat first_step = sys.space->dist(sys.space->compactified_index(1),
                                             sys.space->compactified_index(6));
      Json d = Json::object();
      d["initial"] = rat_str(st.dists.front());
      d["max"] = rat_str(st.max_dist);
      checks.add("shift_pair_starts_at_max",
                 st.max_dist == first_step && st.dists.front() == st.max_dist, d);
    }
    {
      bool zero_tail = st.min_dist == 0;
      if (horizon >= n_max + 1)
        for (std::size_t t = static_cast<std::size_t>(n_max + 1); t < st.dists.size(); ++t)
          zero_tail = zero_tail && st.dists[t] == 0;
      Json d = Json::object();
      d["absorb_by"] = n_max + 1;
      checks.add("shift_pair_collapses_to_zero", zero_tail, d);
    }
    extra["zshift"] = pairstats_json(st);
  }
  {
    const SystemDef sys = zoo_fig1(grid);
    const int a = sys.space->snap(rat(-3, 5));
    const int b = a + 1;
    const PairStats st = pair_stats(sys, a, b, 100, {rat(1, 2)});
    {
      Json d = Json::object();
      d["pair"] = sys.space->label(a) + "," + sys.space->label(b);
      d["min"] = rat_str(st.min_dist);
      d["max"] = rat_str(st.max_dist);
      checks.add("nearby_pair_proximal_yet_separating",
                 st.min_dist == 0 && st.max_dist > rat(1, 2), d);
    }
    checks.add("li_yorke_candidate", st.li_yorke_candidate(rat(1, 100), rat(1, 2)),
               Json::object());
    extra["fig1"] = pairstats_json(st);
  }

  return finish("pairstats_zshift", p.seed, params, checks, extra);
}

inline ScenarioOutcome scn_hitting_times_examples(const ScenarioParams& p) {
  const long grid = p.get_long("grid", 16);
  const long horizon = p.get_long("horizon", 8);
  Json params = Json::object();
  params["grid"] = grid;
  params["horizon"] = horizon;

  Checks checks;
  {
    const SystemDef sys = zoo_fig1(grid);
    const FiniteView view = make_base_view(sys);
    std::vector<int> pos, neg;
    for (int i = 0; i < sys.space->size(); ++i) {
      if (sys.space->coord(i) > 0) pos.push_back(i);
      if (sys.space->coord(i) < 0) neg.push_back(i);
    }
    const std::vector<long> hits = hitting_times(view, pos, neg, horizon);
    Json d = Json::object();
    d["times"] = hits;
    const bool has_one =
        !hits.empty() && std::find(hits.begin(), hits.end(), 1L) != hits.end();
    checks.add("positives_reach_negatives_immediately", has_one, d);
  }
  {
    const SystemDef sys = zoo_zshift(10);
    const FiniteView view = make_base_view(sys);
    const int start = sys.space->compactified_index(0);
    const int inf = sys.space->size() - 1;
    const std::vector<long> hits = hitting_times(view, {start}, {inf}, 12);
    Json d = Json::object();
    d["times"] = hits;
    checks.add("shift_hits_infinity_after_n_max",
               !hits.empty() && hits.front() == 11, d);
  }
  return finish("hitting_times_examples", p.seed, params, checks);
}

}  // namespace scen

inline const std::vector<Scenario>& scenario_registry() {
  static const std::vector<Scenario> registry = [] {
    std::vector<Scenario> v;
    v.push_back({"prohorov_oracle",
                 "exact distance: min-cut solver matches the set-enumeration oracle, "
                 "symmetry and metric axioms on three space kinds",
                 {"pairs=200", "support=6", "triples=30", "grid=16", "compact_n=5"},
                 scen::scn_prohorov_oracle});
    v.push_back({"lemma21",
                 "distance basics on measures: Dirac pairs realize min{d,1}, pushforwards "
                 "are linear, mixtures of a pair move by at most the weight gap",
                 {"trials=200", "mixes=100", "quantize_trials=20", "grid=16"},
                 scen::scn_lemma21});
    v.push_back({"thm33_swap2",
                 "constructive chains between measures on the two-point swap system: "
                 "interpolation hops at most eps/2, tail hops exactly zero",
                 {"kspread=6"},
                 scen::scn_thm33_swap2});
    v.push_back({"thm33_fig1",
                 "constructive chains between random measures over the interval map, "
                 "run on exact line measures seeded from a grid",
                 {"grid=8", "pairs=20", "kspread=3", "eps=2/5"},
                 scen::scn_thm33_fig1});
    v.push_back({"thm38_nonshadowing",
                 "a slowly drifting pseudo-orbit of measures that no single measure "
                 "shadows; the induced-system decision procedure agrees",
                 {"delta=0.1", "n0=12", "alpha_den=1000", "floor=1/4", "meas_grid=20",
                  "eps=6/25"},
                 scen::scn_thm38_nonshadowing});
    v.push_back({"ex34_no_chain",
                 "no delta-chain from 0 to the point nearest 2/3 under the flat-then-"
                 "steep interval map; the reachable closure is certified",
                 {"delta=0.3", "grid=0 (0 runs 16 and 64)", "max_len=4q+16"},
                 scen::scn_ex34_no_chain});
    v.push_back({"ex35_no_chain",
                 "no delta-chain from 1/2 to 1 under the squaring map; the reachable "
                 "closure stays below 1/2",
                 {"delta=0.25", "grid=0 (0 runs 16 and 64)", "max_len=4q+16"},
                 scen::scn_ex35_no_chain});
    v.push_back({"swap2_properties",
                 "the two-point swap is transitive but not mixing; hitting times "
                 "alternate by parity and order-2 weak mixing fails",
                 {"horizon=6"},
                 scen::scn_swap2_properties});
    v.push_back({"thm22_separation",
                 "an orbit of measures that stays eps-separated from a fixed mixture "
                 "while every sampled ball measure keeps low mass on [0,1]",
                 {"eps0=0.2", "eps=0.25", "horizon=50", "samples=200", "grid=64"},
                 scen::scn_thm22_separation});
    v.push_back({"lemma41_inclusion",
                 "sensitivity times of a Dirac under the induced dynamics sit inside "
                 "the base sensitivity times at half the separation threshold",
                 {"tuples=20", "horizon=100", "grid=64"},
                 scen::scn_lemma41_inclusion});
    v.push_back({"entropy_flat",
                 "separated-set entropy estimate is exactly zero for the identity and "
                 "the two-point swap, by greedy and exact counting",
                 {"grid=19"},
                 scen::scn_entropy_flat});
    v.push_back({"entropy_fig1",
                 "entropy estimate for the interval map on a fine grid lands in the "
                 "expected band before grid saturation",
                 {"grid=4096", "band_lo=0.28", "band_hi=0.42"},
                 scen::scn_entropy_fig1});
    v.push_back({"entropy_embedding",
                 "Dirac embedding preserves separated counts, and the induced system "
                 "separates at least as many measures as the base separates points",
                 {"grid=16", "meas_grid=2"},
                 scen::scn_entropy_embedding});
    v.push_back({"ex56_convergence",
                 "on compactified integers every measure is pushed to the point at "
                 "infinity in exactly 2N+1 steps, with monotone checkpoints",
                 {"n_max=10", "samples=50"},
                 scen::scn_ex56_convergence});
    v.push_back({"lemma25_uniform",
                 "connect-the-dots maps converge uniformly to the identity and the "
                 "induced maps converge at the same rate on measures",
                 {"grid=180", "mmax=6", "trials=20"},
                 scen::scn_lemma25_uniform});
    v.push_back({"thm27_circle",
                 "under a near-irrational circle rotation, short word compositions "
                 "never spread one small ball over all three separated balls",
                 {"grid=10946", "words=32", "eps0=1/8", "eps1=1/12"},
                 scen::scn_thm27_circle});
    v.push_back({"pairstats_zshift",
                 "orbit-pair statistics: the integer shift collapses every pair to "
                 "zero distance; the interval map keeps proximal separating pairs",
                 {"n_max=50", "horizon=60", "grid=256"},
                 scen::scn_pairstats_zshift});
    v.push_back({"hitting_times_examples",
                 "hitting-time bookkeeping on the interval map and the integer shift",
                 {"grid=16", "horizon=8"},
                 scen::scn_hitting_times_examples});
    return v;
  }();
  return registry;
}

inline const Scenario* find_scenario(const std::string& name) {
  for (const Scenario& s : scenario_registry())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace measdyn
