#pragma once

// Map descriptions and their two evaluation semantics:
//
//   apply_exact   continuous semantics on rational coordinates (piecewise
//                 linear, quadratic, rotations, compositions of those)
//   apply         grid semantics on point indices: evaluate exactly, then
//                 snap to the nearest grid point (ties toward the smaller
//                 coordinate); values leaving the space raise an error
//
// Monotone inverses (used for inverse circle homeomorphisms) have no exact
// continuous form here; they are realized by rational bisection on the lift
// down to half a grid cell and only exist under grid semantics.

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "measdyn/space.hpp"

namespace measdyn {

enum class MapKind {
  Identity,
  Table,
  PiecewiseLinear,
  Quadratic,
  CircleRotation,
  CompactifiedShift,
  MonotoneInverse,
  Composition,
};

struct MapSpec {
  MapKind kind = MapKind::Identity;
  std::string name;

  std::vector<int> images;                    // Table
  std::vector<std::pair<Rat, Rat>> nodes;     // PiecewiseLinear, (x, f(x)) with x strictly increasing
  Rat qa, qb, qc;                             // Quadratic a x^2 + b x + c
  bool wrap = false;                          // evaluate mod 1 (circle)
  Rat angle;                                  // CircleRotation, fraction of a turn
  std::vector<MapSpec> parts;                 // Composition (applied first-to-last), MonotoneInverse (single part)
};

inline MapSpec map_identity() {
  MapSpec m;
  m.kind = MapKind::Identity;
  m.name = "id";
  return m;
}

inline MapSpec map_table(std::vector<int> images, std::string name = "table") {
  MapSpec m;
  m.kind = MapKind::Table;
  m.images = std::move(images);
  m.name = std::move(name);
  return m;
}

inline MapSpec map_piecewise_linear(std::vector<std::pair<Rat, Rat>> nodes,
                                    std::string name = "pl") {
  if (nodes.size() < 2) throw Error("piecewise-linear map needs at least two nodes");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i - 1].first < nodes[i].first))
      throw Error("piecewise-linear nodes must have strictly increasing x");
  MapSpec m;
  m.kind = MapKind::PiecewiseLinear;
  m.nodes = std::move(nodes);
  m.name = std::move(name);
  return m;
}

inline MapSpec map_quadratic(const Rat& a, const Rat& b, const Rat& c, bool wrap,
                             std::string name = "quadratic") {
  MapSpec m;
  m.kind = MapKind::Quadratic;
  m.qa = a;
  m.qb = b;
  m.qc = c;
  m.wrap = wrap;
  m.name = std::move(name);
  return m;
}

inline MapSpec map_rotation(const Rat& angle, std::string name = "rotation") {
  MapSpec m;
  m.kind = MapKind::CircleRotation;
  m.angle = angle;
  m.name = std::move(name);
  return m;
}

inline MapSpec map_compactified_shift() {
  MapSpec m;
  m.kind = MapKind::CompactifiedShift;
  m.name = "shift";
  return m;
}

// Inverse of a strictly increasing self-map of [0,1] fixing 0 and 1,
// interpreted as an orientation-preserving circle homeomorphism.
inline MapSpec map_monotone_inverse(MapSpec inner) {
  MapSpec m;
  m.kind = MapKind::MonotoneInverse;
  m.name = inner.name + "^-1";
  m.parts.push_back(std::move(inner));
  return m;
}

inline MapSpec map_compose(std::vector<MapSpec> parts, std::string name = "") {
  if (parts.empty()) throw Error("composition needs at least one map");
  MapSpec m;
  m.kind = MapKind::Composition;
  if (name.empty()) {
    for (auto it = parts.rbegin(); it != parts.rend(); ++it)
      name += (name.empty() ? "" : "*") + it->name;
  }
  m.name = std::move(name);
  m.parts = std::move(parts);
  return m;
}

// Exact continuous evaluation at a rational coordinate.
inline Rat apply_exact(const MapSpec& map, const Rat& x) {
  switch (map.kind) {
    case MapKind::Identity:
      return x;
    case MapKind::PiecewiseLinear: {
      const auto& nodes = map.nodes;
      if (x < nodes.front().first || x > nodes.back().first)
        throw Error("point " + rat_str(x) + " outside the domain of map " + map.name);
      for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (x > nodes[i].first) continue;
        const auto& [x0, y0] = nodes[i - 1];
        const auto& [x1, y1] = nodes[i];
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
      }
      throw Error("unreachable");
    }
    case MapKind::Quadratic: {
      Rat v = map.qa * x * x + map.qb * x + map.qc;
      if (map.wrap) v -= rat_floor(v);
      return v;
    }
    case MapKind::CircleRotation: {
      Rat v = x + map.angle;
      return v - rat_floor(v);
    }
    case MapKind::Composition: {
      Rat v = x;
      for (const MapSpec& part : map.parts) v = apply_exact(part, v);
      return v;
    }
    case MapKind::Table:
    case MapKind::CompactifiedShift:
      throw Error("map " + map.name + " acts on point indices, not coordinates");
    case MapKind::MonotoneInverse:
      throw Error("monotone inverse " + map.name + " has grid semantics only");
  }
  throw Error("unreachable");
}

// Grid semantics: point index to point index.
inline int apply(const MetricSpace& space, const MapSpec& map, int point) {
  switch (map.kind) {
    case MapKind::Identity:
      return point;
    case MapKind::Table: {
      if (map.images.size() != static_cast<std::size_t>(space.size()))
        throw Error("table map size does not match the space");
      if (point < 0 || point >= space.size()) throw Error("point index out of range");
      const int img = map.images[point];
      if (img < 0 || img >= space.size())
        throw Error("table image leaves the space at " + space.label(point));
      return img;
    }
    case MapKind::CompactifiedShift: {
      if (space.kind() != SpaceKind::CompactifiedIntegers)
        throw Error("shift map needs a compactified-integers space");
      if (point == space.compactified_inf()) return point;
      if (point == space.size() - 2) return space.compactified_inf();  // n = N absorbs
      return point + 1;
    }
    case MapKind::PiecewiseLinear:
    case MapKind::Quadratic:
    case MapKind::CircleRotation: {
      const Rat v = apply_exact(map, space.coord(point));
      try {
        return space.snap(v);
      } catch (const Error&) {
        throw Error("image of " + space.label(point) + " under " + map.name + " is " +
                    rat_str(v) + ", which leaves the space");
      }
    }
    case MapKind::MonotoneInverse: {
      if (space.kind() != SpaceKind::CircleGrid)
        throw Error("monotone inverse " + map.name + " needs a circle grid");
      const MapSpec& fwd = map.parts.front();
      const Rat y = space.coord(point);
      // Bisect the lift on [0,1]; the forward map fixes 0 and 1.
      Rat lo(0), hi(1);
      const long steps = 4 + static_cast<long>(std::ceil(std::log2(static_cast<double>(
                                 2 * space.q()))));
      for (long i = 0; i < steps; ++i) {
        const Rat mid = (lo + hi) / 2;
        if (apply_exact(fwd, mid) < y)
          lo = mid;
        else
          hi = mid;
      }
      return space.snap((lo + hi) / 2);
    }
    case MapKind::Composition: {
      int p = point;
      for (const MapSpec& part : map.parts) p = apply(space, part, p);
      return p;
    }
  }
  throw Error("unreachable");
}

// Full image table of a grid map; also the cheapest surjectivity check.
inline std::vector<int> apply_table(const MetricSpace& space, const MapSpec& map) {
  std::vector<int> out(space.size());
  for (int i = 0; i < space.size(); ++i) out[i] = apply(space, map, i);
  return out;
}

// Least preimage in canonical point order under grid semantics.
inline int preimage_witness(const MetricSpace& space, const MapSpec& map, int target) {
  for (int i = 0; i < space.size(); ++i)
    if (apply(space, map, i) == target) return i;
  throw Error("not surjective at " + space.label(target) + ": no grid preimage under " +
              map.name);
}

// Least exact rational preimage of a continuous piecewise-linear map,
// solved segment by segment.
inline Rat preimage_exact_pl(const MapSpec& map, const Rat& y) {
  if (map.kind != MapKind::PiecewiseLinear)
    throw Error("exact preimages are implemented for piecewise-linear maps");
  std::optional<Rat> best;
  const auto& nodes = map.nodes;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const auto& [x0, y0] = nodes[i - 1];
    const auto& [x1, y1] = nodes[i];
    std::optional<Rat> x;
    if (y0 == y1) {
      if (y == y0) x = x0;
    } else if ((y0 <= y && y <= y1) || (y1 <= y && y <= y0)) {
      x = x0 + (x1 - x0) * (y - y0) / (y1 - y0);
    }
    if (x && (!best || *x < *best)) best = x;
  }
  if (!best)
    throw Error("not surjective at " + rat_str(y) + ": no preimage under " + map.name);
  return *best;
}

// Exact image interval of [u, v] under a continuous piecewise-linear map.
inline std::pair<Rat, Rat> interval_image_pl(const MapSpec& map, const Rat& u, const Rat& v) {
  if (map.kind != MapKind::PiecewiseLinear) throw Error("interval images need a pl map");
  if (u > v) throw Error("interval image needs u <= v");
  Rat lo = apply_exact(map, u), hi = lo;
  const auto grow = [&](const Rat& val) {
    lo = rat_min(lo, val);
    hi = rat_max(hi, val);
  };
  grow(apply_exact(map, v));
  for (const auto& [x, y] : map.nodes)
    if (u < x && x < v) grow(y);
  return {lo, hi};
}

// Whether the continuous piecewise-linear map covers [lo, hi].
inline bool surjective_onto_pl(const MapSpec& map, const Rat& lo, const Rat& hi) {
  if (map.kind != MapKind::PiecewiseLinear) throw Error("surjectivity check needs a pl map");
  // Union of segment images: sort by left endpoint, sweep for a gap.
  std::vector<std::pair<Rat, Rat>> segs;
  for (std::size_t i = 1; i < map.nodes.size(); ++i) {
    const Rat& a = map.nodes[i - 1].second;
    const Rat& b = map.nodes[i].second;
    segs.push_back({rat_min(a, b), rat_max(a, b)});
  }
  std::sort(segs.begin(), segs.end());
  Rat covered = lo;
  for (const auto& [a, b] : segs) {
    if (a > covered) return false;
    covered = rat_max(covered, b);
    if (covered >= hi) return true;
  }
  return covered >= hi;
}

}  // namespace measdyn
