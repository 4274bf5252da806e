#pragma once

// Compact spaces realized as finite point sets with exact rational metrics.
//
// Five kinds:
//   finite                  labelled points, discrete metric or explicit table
//   interval-grid           q+1 equispaced points on [lo, hi], d = |x - y|
//   circle-grid             q points k/q on the circumference-1 circle,
//                           d = min(|s-t|, 1-|s-t|)
//   compactified-integers   {-N..N, inf} embedded on a circle through
//                           p(n) = 2*atan(n)/pi, p(inf) = 1, quantized to
//                           denominator 10^12; d = wrap distance of positions
//                           on the circumference-2 circle
//   product                 pairs with the max metric
//
// The compactified embedding is quantized so the metric is rational. The wrap
// metric is a true metric for any choice of positions (quantization moves the
// points along the circle, it does not bend the metric), so the axioms hold
// exactly, d(n, inf) still decreases in |n|, and every downstream computation
// stays in exact arithmetic.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "measdyn/rational.hpp"

namespace measdyn {

enum class SpaceKind { Finite, IntervalGrid, CircleGrid, CompactifiedIntegers, Product };

inline const char* space_kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::Finite: return "finite";
    case SpaceKind::IntervalGrid: return "interval-grid";
    case SpaceKind::CircleGrid: return "circle-grid";
    case SpaceKind::CompactifiedIntegers: return "compactified-integers";
    case SpaceKind::Product: return "product";
  }
  return "?";
}

class MetricSpace {
 public:
  SpaceKind kind() const { return kind_; }
  int size() const { return size_; }
  const std::string& label(int i) const { check_index(i); return labels_[i]; }

  int index_of(const std::string& label) const {
    for (int i = 0; i < size_; ++i)
      if (labels_[i] == label) return i;
    throw Error("no point labelled '" + label + "' in this space");
  }

  Rat dist(int i, int j) const {
    check_index(i);
    check_index(j);
    switch (kind_) {
      case SpaceKind::Finite:
        if (table_.empty()) return i == j ? Rat(0) : Rat(1);
        return table_[static_cast<std::size_t>(i) * size_ + j];
      case SpaceKind::IntervalGrid:
        return rat_abs(coords_[i] - coords_[j]);
      case SpaceKind::CircleGrid:
      case SpaceKind::CompactifiedIntegers: {
        const Rat gap = rat_abs(coords_[i] - coords_[j]);
        return rat_min(gap, circumference_ - gap);
      }
      case SpaceKind::Product: {
        const int ai = i / right_->size(), bi = i % right_->size();
        const int aj = j / right_->size(), bj = j % right_->size();
        return rat_max(left_->dist(ai, aj), right_->dist(bi, bj));
      }
    }
    throw Error("unreachable");
  }

  Rat diameter() const { return diameter_; }

  // Coordinate of a grid / embedded point (interval position, circle position
  // in [0,1), or circle embedding position for compactified integers).
  const Rat& coord(int i) const {
    check_index(i);
    if (coords_.empty()) throw Error("points of this space have no coordinates");
    return coords_[i];
  }

  // interval-grid accessors
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  long q() const { return q_; }

  // Nearest grid index for an exact value, ties toward the smaller
  // coordinate. Values outside the interval are a grid-closure violation.
  int snap(const Rat& x) const {
    if (kind_ == SpaceKind::IntervalGrid) {
      if (x < lo_ || x > hi_)
        throw Error("value " + rat_str(x) + " leaves the interval [" + rat_str(lo_) + ", " +
                    rat_str(hi_) + "]");
      const Rat t = (x - lo_) * q_ / (hi_ - lo_);
      long i = rat_round_ties_down(t);
      return static_cast<int>(i);
    }
    if (kind_ == SpaceKind::CircleGrid) {
      Rat t = x - rat_floor(x);  // wrap into [0,1)
      long i = rat_round_ties_down(t * q_);
      return static_cast<int>(i % q_);
    }
    throw Error("snap only applies to grid spaces");
  }

  static MetricSpace finite(std::vector<std::string> labels) {
    if (labels.empty()) throw Error("finite space needs at least one point");
    MetricSpace s;
    s.kind_ = SpaceKind::Finite;
    s.size_ = static_cast<int>(labels.size());
    s.labels_ = std::move(labels);
    s.diameter_ = s.size_ > 1 ? Rat(1) : Rat(0);
    return s;
  }

  static MetricSpace finite_table(std::vector<std::string> labels, std::vector<Rat> dmatrix) {
    const int n = static_cast<int>(labels.size());
    if (n == 0) throw Error("finite space needs at least one point");
    if (dmatrix.size() != static_cast<std::size_t>(n) * n)
      throw Error("distance table must be square over the point list");
    MetricSpace s;
    s.kind_ = SpaceKind::Finite;
    s.size_ = n;
    s.labels_ = std::move(labels);
    s.table_ = std::move(dmatrix);
    s.validate_metric_axioms();
    for (const Rat& d : s.table_) s.diameter_ = rat_max(s.diameter_, d);
    return s;
  }

  static MetricSpace interval_grid(const Rat& lo, const Rat& hi, long q) {
    if (!(lo < hi)) throw Error("interval needs lo < hi");
    if (q < 1) throw Error("interval grid needs q >= 1");
    MetricSpace s;
    s.kind_ = SpaceKind::IntervalGrid;
    s.lo_ = lo;
    s.hi_ = hi;
    s.q_ = q;
    s.size_ = static_cast<int>(q + 1);
    s.coords_.reserve(s.size_);
    s.labels_.reserve(s.size_);
    for (long i = 0; i <= q; ++i) {
      Rat c = lo + (hi - lo) * i / q;
      s.labels_.push_back(rat_str(c));
      s.coords_.push_back(std::move(c));
    }
    s.diameter_ = hi - lo;
    return s;
  }

  static MetricSpace circle_grid(long q) {
    if (q < 1) throw Error("circle grid needs q >= 1");
    MetricSpace s;
    s.kind_ = SpaceKind::CircleGrid;
    s.q_ = q;
    s.size_ = static_cast<int>(q);
    s.circumference_ = 1;
    for (long i = 0; i < q; ++i) {
      Rat c = rat(i, q);
      s.labels_.push_back(rat_str(c));
      s.coords_.push_back(std::move(c));
    }
    s.diameter_ = rat(rat_floor(rat(q, 2)), q);
    return s;
  }

  static MetricSpace compactified_integers(long n_max) {
    if (n_max < 0) throw Error("compactified integers need N >= 0");
    MetricSpace s;
    s.kind_ = SpaceKind::CompactifiedIntegers;
    s.q_ = n_max;
    s.size_ = static_cast<int>(2 * n_max + 2);
    s.circumference_ = 2;
    constexpr long kQuant = 1000000000000L;  // positions rounded to 1e-12
    for (long n = -n_max; n <= n_max; ++n) {
      const double pos = 2.0 * std::atan(static_cast<double>(n)) / M_PI;
      s.coords_.push_back(rat(std::llround(pos * kQuant), kQuant));
      s.labels_.push_back(std::to_string(n));
    }
    s.coords_.push_back(Rat(1));
    s.labels_.push_back("inf");
    for (int i = 0; i < s.size_; ++i)
      for (int j = 0; j < i; ++j) s.diameter_ = rat_max(s.diameter_, s.dist(i, j));
    return s;
  }

  static MetricSpace product(std::shared_ptr<const MetricSpace> a,
                             std::shared_ptr<const MetricSpace> b) {
    if (!a || !b) throw Error("product of missing spaces");
    MetricSpace s;
    s.kind_ = SpaceKind::Product;
    s.left_ = std::move(a);
    s.right_ = std::move(b);
    s.size_ = s.left_->size() * s.right_->size();
    s.labels_.reserve(s.size_);
    for (int i = 0; i < s.left_->size(); ++i)
      for (int j = 0; j < s.right_->size(); ++j)
        s.labels_.push_back("(" + s.left_->label(i) + "," + s.right_->label(j) + ")");
    s.diameter_ = rat_max(s.left_->diameter(), s.right_->diameter());
    return s;
  }

  // Index of the labelled integer point (or "inf") of a compactified space.
  int compactified_index(long n) const {
    if (kind_ != SpaceKind::CompactifiedIntegers)
      throw Error("not a compactified-integers space");
    if (n < -q_ || n > q_) throw Error("integer outside the truncation window");
    return static_cast<int>(n + q_);
  }
  int compactified_inf() const {
    if (kind_ != SpaceKind::CompactifiedIntegers)
      throw Error("not a compactified-integers space");
    return size_ - 1;
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= size_) throw Error("point index out of range");
  }

  void validate_metric_axioms() const {
    for (int i = 0; i < size_; ++i) {
      if (table_[static_cast<std::size_t>(i) * size_ + i] != 0)
        throw Error("distance table has nonzero diagonal at " + labels_[i]);
      for (int j = 0; j < size_; ++j) {
        const Rat& dij = table_[static_cast<std::size_t>(i) * size_ + j];
        if (i != j && dij <= 0)
          throw Error("distance table not positive between distinct points " + labels_[i] +
                      ", " + labels_[j]);
        if (dij != table_[static_cast<std::size_t>(j) * size_ + i])
          throw Error("distance table not symmetric at " + labels_[i] + ", " + labels_[j]);
        for (int k = 0; k < size_; ++k) {
          const Rat& dik = table_[static_cast<std::size_t>(i) * size_ + k];
          const Rat& dkj = table_[static_cast<std::size_t>(k) * size_ + j];
          if (dij > dik + dkj)
            throw Error("distance table violates the triangle inequality at " + labels_[i] +
                        ", " + labels_[k] + ", " + labels_[j]);
        }
      }
    }
  }

  SpaceKind kind_ = SpaceKind::Finite;
  int size_ = 0;
  std::vector<std::string> labels_;
  std::vector<Rat> coords_;
  std::vector<Rat> table_;  // finite explicit metric, row-major
  Rat lo_, hi_;
  long q_ = 0;
  Rat circumference_;
  Rat diameter_;
  std::shared_ptr<const MetricSpace> left_, right_;
};

// Open eps-fattening A^eps = {x : d(x, A) < eps}, returned as sorted indices.
inline std::vector<int> fatten(const MetricSpace& space, const std::vector<int>& set,
                               const Rat& eps) {
  if (set.empty()) throw Error("empty set has no fattening");
  std::vector<int> out;
  for (int x = 0; x < space.size(); ++x) {
    for (const int a : set) {
      if (space.dist(x, a) < eps) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

}  // namespace measdyn
