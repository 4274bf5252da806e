#pragma once

// Report serialization: every verdict and witness renders to ordered JSON so
// repeated runs with the same seed are byte-identical. Rationals serialize as
// numerator/denominator strings plus a float approximation.

#include <string>

#include "json.hpp"
#include "measdyn/chains.hpp"
#include "measdyn/deciders.hpp"
#include "measdyn/entropy.hpp"
#include "measdyn/measure.hpp"
#include "measdyn/pairstats.hpp"
#include "measdyn/sensitivity.hpp"

namespace measdyn {

using Json = nlohmann::ordered_json;

inline Json rat_json(const Rat& r) {
  Json j;
  j["num"] = r.get_num().get_str();
  j["den"] = r.get_den().get_str();
  j["approx"] = to_double(r);
  return j;
}

inline Json measure_json(const DiscreteMeasure& m) {
  Json atoms = Json::array();
  for (const Atom& a : m.atoms()) {
    Json row;
    row["point"] = m.space().label(a.point);
    row["num"] = a.weight.get_num().get_str();
    row["den"] = a.weight.get_den().get_str();
    atoms.push_back(std::move(row));
  }
  return atoms;
}

inline Json line_measure_json(const LineMeasure& m) {
  Json atoms = Json::array();
  for (const LineAtom& a : m.atoms) {
    Json row;
    row["point"] = rat_str(a.position);
    row["num"] = a.weight.get_num().get_str();
    row["den"] = a.weight.get_den().get_str();
    atoms.push_back(std::move(row));
  }
  return atoms;
}

inline Json timeset_json(const TimeSet& t) {
  Json j;
  j["horizon"] = t.horizon;
  j["members"] = t.members;
  j["cofinite_at_horizon"] = t.cofinite_at_horizon;
  j["suffix_start"] = t.suffix_start;
  j["max_gap"] = t.max_gap;
  j["density"] = t.density;
  return j;
}

inline Json pairstats_json(const PairStats& st) {
  Json j;
  j["horizon"] = st.horizon;
  j["min_dist"] = rat_json(st.min_dist);
  j["max_dist"] = rat_json(st.max_dist);
  Json rows = Json::array();
  for (const DensityRow& r : st.densities) {
    Json row;
    row["threshold"] = rat_str(r.threshold);
    row["lower"] = r.lower;
    row["upper"] = r.upper;
    rows.push_back(std::move(row));
  }
  j["densities"] = std::move(rows);
  return j;
}

inline Json chain_json(const Chain& c, const FiniteView& view) {
  Json j;
  j["delta"] = rat_str(c.delta);
  Json states = Json::array();
  for (const int s : c.states) states.push_back(view.label(s));
  j["states"] = std::move(states);
  Json slacks = Json::array();
  for (const Rat& h : c.hop_slacks) slacks.push_back(rat_str(h));
  j["hop_slacks"] = std::move(slacks);
  return j;
}

inline Json verdict_json(Verdict v) { return Json(verdict_name(v)); }

inline Json shadowing_json(const ShadowingResult& r, const FiniteView& view) {
  Json j;
  j["status"] = verdict_json(r.status);
  j["explored"] = r.explored;
  j["note"] = r.note;
  if (!r.pseudo_orbit.empty()) {
    Json w = Json::array();
    for (const int s : r.pseudo_orbit) w.push_back(view.label(s));
    j["witness_pseudo_orbit"] = std::move(w);
  }
  return j;
}

inline Json entropy_json(const EntropyEstimate& est) {
  Json j;
  j["method"] = est.method;
  j["estimate"] = est.estimate;
  Json rates = Json::array();
  for (const auto& [eps, rate] : est.rates) {
    Json row;
    row["eps"] = rat_str(eps);
    row["rate"] = rate;
    rates.push_back(std::move(row));
  }
  j["rates"] = std::move(rates);
  Json rows = Json::array();
  for (const EntropyRow& r : est.rows) {
    Json row;
    row["eps"] = rat_str(r.eps);
    row["n"] = r.n;
    row["a_n"] = r.a_n;
    row["s_n"] = r.s_n;
    row["method"] = r.method;
    row["quotient"] = r.quotient;
    row["rate"] = r.rate;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace measdyn
