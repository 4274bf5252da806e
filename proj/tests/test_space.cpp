#include <catch2/catch_amalgamated.hpp>

#include "measdyn/rng.hpp"
#include "measdyn/space.hpp"

using namespace measdyn;

namespace {

void require_metric_axioms(const MetricSpace& s, int i, int j, int k) {
  REQUIRE(s.dist(i, i) == 0);
  REQUIRE(s.dist(i, j) == s.dist(j, i));
  if (i != j) REQUIRE(s.dist(i, j) > 0);
  REQUIRE(s.dist(i, k) <= s.dist(i, j) + s.dist(j, k));
}

}  // namespace

TEST_CASE("finite space uses the discrete metric") {
  const MetricSpace s = MetricSpace::finite({"a", "b", "c"});
  REQUIRE(s.size() == 3);
  REQUIRE(s.kind() == SpaceKind::Finite);
  REQUIRE(s.dist(0, 0) == 0);
  REQUIRE(s.dist(0, 1) == 1);
  REQUIRE(s.dist(2, 1) == 1);
  REQUIRE(s.index_of("b") == 1);
  REQUIRE(s.label(2) == "c");
  REQUIRE_THROWS_AS(s.index_of("d"), Error);
}

TEST_CASE("finite table validates and serves exact distances") {
  const MetricSpace s = MetricSpace::finite_table(
      {"p", "q", "r"},
      {Rat(0), rat(1, 2), Rat(1), rat(1, 2), Rat(0), rat(3, 4), Rat(1), rat(3, 4), Rat(0)});
  REQUIRE(s.dist(0, 2) == 1);
  REQUIRE(s.dist(1, 2) == rat(3, 4));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) require_metric_axioms(s, i, j, k);

  SECTION("asymmetric tables are rejected") {
    REQUIRE_THROWS_AS(
        MetricSpace::finite_table({"p", "q"}, {Rat(0), rat(1, 2), rat(1, 3), Rat(0)}),
        Error);
  }
  SECTION("triangle violations are rejected") {
    REQUIRE_THROWS_AS(
        MetricSpace::finite_table({"p", "q", "r"}, {Rat(0), Rat(1), rat(1, 8), Rat(1), Rat(0),
                                                    rat(1, 8), rat(1, 8), rat(1, 8), Rat(0)}),
        Error);
  }
}

TEST_CASE("interval grid holds q+1 equispaced rational points") {
  const MetricSpace s = MetricSpace::interval_grid(Rat(-1), Rat(1), 16);
  REQUIRE(s.size() == 17);
  REQUIRE(s.coord(0) == -1);
  REQUIRE(s.coord(16) == 1);
  REQUIRE(s.coord(8) == 0);
  REQUIRE(s.coord(9) == rat(1, 8));
  REQUIRE(s.dist(0, 16) == 2);
  REQUIRE(s.dist(8, 9) == rat(1, 8));
  REQUIRE(s.label(8) == "0");

  SECTION("snap picks the nearest grid point, ties toward the lower index") {
    REQUIRE(s.snap(rat(1, 8)) == 9);
    REQUIRE(s.snap(rat(3, 10)) == 10);        // 0.3 -> 5/16 side
    REQUIRE(s.snap(rat(1, 16)) == 8);         // exact midpoint of [0, 1/8] -> lower
    REQUIRE(s.snap(Rat(-1)) == 0);
    REQUIRE(s.snap(Rat(1)) == 16);
    REQUIRE_THROWS_AS(s.snap(rat(17, 16)), Error);
  }
}

TEST_CASE("circle grid wraps distances around") {
  const MetricSpace s = MetricSpace::circle_grid(10);
  REQUIRE(s.size() == 10);
  REQUIRE(s.dist(0, 1) == rat(1, 10));
  REQUIRE(s.dist(0, 9) == rat(1, 10));
  REQUIRE(s.dist(0, 5) == rat(1, 2));
  REQUIRE(s.dist(2, 8) == rat(4, 10));
  REQUIRE(s.snap(rat(97, 100)) == 0);  // wraps beyond the last point
  REQUIRE(s.snap(rat(19, 20)) == 9);   // exact midpoint ties toward the lower index
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 10; ++k) require_metric_axioms(s, i, j, k);
}

TEST_CASE("compactified integers embed on a circle with a rational metric") {
  const MetricSpace s = MetricSpace::compactified_integers(5);
  REQUIRE(s.size() == 12);  // -5..5 and inf
  const int inf = s.index_of("inf");
  REQUIRE(s.index_of("0") != inf);
  REQUIRE(s.dist(s.index_of("-5"), s.index_of("5")) > 0);

  SECTION("distance to infinity shrinks as n grows") {
    Rat prev = s.dist(s.index_of("0"), inf);
    for (int n = 1; n <= 5; ++n) {
      const Rat cur = s.dist(s.index_of(std::to_string(n)), inf);
      REQUIRE(cur < prev);
      prev = cur;
    }
  }
  SECTION("metric axioms hold on every triple") {
    for (int i = 0; i < s.size(); ++i)
      for (int j = 0; j < s.size(); ++j)
        for (int k = 0; k < s.size(); ++k) require_metric_axioms(s, i, j, k);
  }
  SECTION("the embedding is symmetric about zero") {
    for (int n = 1; n <= 5; ++n)
      REQUIRE(s.dist(s.index_of(std::to_string(n)), s.index_of("0")) ==
              s.dist(s.index_of(std::to_string(-n)), s.index_of("0")));
  }
}

TEST_CASE("product space takes the max metric") {
  auto a = std::make_shared<const MetricSpace>(MetricSpace::interval_grid(Rat(0), Rat(1), 4));
  auto b = std::make_shared<const MetricSpace>(MetricSpace::finite({"x", "y"}));
  const MetricSpace p = MetricSpace::product(a, b);
  REQUIRE(p.size() == 10);
  // pairs enumerate left-major: index = i * |b| + j
  const int p00 = 0, p41 = 4 * 2 + 1;
  REQUIRE(p.dist(p00, p41) == rat_max(a->dist(0, 4), b->dist(0, 1)));
  REQUIRE(p.dist(p00, 2 * 2 + 0) == rat(1, 2));  // same right coordinate
}

TEST_CASE("metric axioms hold on random grid triples") {
  const MetricSpace s = MetricSpace::interval_grid(rat(-3, 2), rat(5, 2), 37);
  Rng rng(7);
  for (int t = 0; t < 300; ++t) {
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(s.size())));
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(s.size())));
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(s.size())));
    require_metric_axioms(s, i, j, k);
  }
}
