#pragma once

// Finitely supported probability measures over a MetricSpace. Values are
// immutable once built; the constructor canonicalizes (atoms sorted by point
// index, duplicates merged, zero weights dropped) and enforces exact total
// mass one, so equality of canonical forms is measure equality.

#include <memory>
#include <utility>
#include <vector>

#include "measdyn/space.hpp"

namespace measdyn {

struct Atom {
  int point = 0;
  Rat weight;
};

class DiscreteMeasure {
 public:
  DiscreteMeasure(std::shared_ptr<const MetricSpace> space, std::vector<Atom> atoms)
      : space_(std::move(space)) {
    if (!space_) throw Error("measure needs a space");
    if (atoms.empty()) throw Error("measure needs a nonempty support list");
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.point < b.point; });
    Rat total(0);
    for (const Atom& a : atoms) {
      if (a.point < 0 || a.point >= space_->size())
        throw Error("support point index out of range");
      if (a.weight < 0) throw Error("negative weight in measure");
      if (a.weight == 0) continue;
      total += a.weight;
      if (!atoms_.empty() && atoms_.back().point == a.point)
        atoms_.back().weight += a.weight;
      else
        atoms_.push_back(a);
    }
    if (total != 1)
      throw Error("weights must sum to one exactly, got " + rat_str(total));
  }

  static DiscreteMeasure dirac(std::shared_ptr<const MetricSpace> space, int point) {
    return DiscreteMeasure(std::move(space), {{point, Rat(1)}});
  }

  // Uniform weights 1/n over a point list; repeats accumulate multiplicity.
  static DiscreteMeasure empirical(std::shared_ptr<const MetricSpace> space,
                                   const std::vector<int>& points) {
    if (points.empty()) throw Error("empirical measure needs at least one point");
    std::vector<Atom> atoms;
    atoms.reserve(points.size());
    const long n = static_cast<long>(points.size());
    for (const int p : points) atoms.push_back({p, rat(1, n)});
    return DiscreteMeasure(std::move(space), std::move(atoms));
  }

  const MetricSpace& space() const { return *space_; }
  const std::shared_ptr<const MetricSpace>& space_ptr() const { return space_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  int support_size() const { return static_cast<int>(atoms_.size()); }

  std::vector<int> support() const {
    std::vector<int> pts;
    pts.reserve(atoms_.size());
    for (const Atom& a : atoms_) pts.push_back(a.point);
    return pts;
  }

  Rat mass(const std::vector<int>& set) const {
    Rat total(0);
    for (const Atom& a : atoms_)
      if (std::find(set.begin(), set.end(), a.point) != set.end()) total += a.weight;
    return total;
  }

  Rat weight_at(int point) const {
    for (const Atom& a : atoms_)
      if (a.point == point) return a.weight;
    return Rat(0);
  }

  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.atoms_.size() != b.atoms_.size()) return false;
    for (std::size_t i = 0; i < a.atoms_.size(); ++i)
      if (a.atoms_[i].point != b.atoms_[i].point || a.atoms_[i].weight != b.atoms_[i].weight)
        return false;
    return true;
  }
  friend bool operator!=(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    return !(a == b);
  }

 private:
  std::shared_ptr<const MetricSpace> space_;
  std::vector<Atom> atoms_;
};

inline std::vector<Rat> measure_weights(const DiscreteMeasure& m) {
  std::vector<Rat> w;
  w.reserve(m.atoms().size());
  for (const Atom& a : m.atoms()) w.push_back(a.weight);
  return w;
}

// Convex combination sum_i coeff_i * mu_i. Coefficients must be nonnegative
// and sum to one exactly; zero-coefficient terms are dropped.
inline DiscreteMeasure mix(const std::vector<std::pair<Rat, DiscreteMeasure>>& terms) {
  if (terms.empty()) throw Error("mix needs at least one term");
  Rat total(0);
  std::vector<Atom> atoms;
  for (const auto& [coeff, m] : terms) {
    if (coeff < 0) throw Error("mix coefficient must be nonnegative");
    total += coeff;
    if (coeff == 0) continue;
    if (m.space_ptr() != terms.front().second.space_ptr())
      throw Error("mix terms must share one space");
    for (const Atom& a : m.atoms()) atoms.push_back({a.point, coeff * a.weight});
  }
  if (total != 1)
    throw Error("mix coefficients must sum to one exactly, got " + rat_str(total));
  return DiscreteMeasure(terms.front().second.space_ptr(), std::move(atoms));
}

}  // namespace measdyn
