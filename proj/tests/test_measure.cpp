#include <catch2/catch_amalgamated.hpp>

#include "measdyn/measure.hpp"
#include "measdyn/rng.hpp"
#include "measdyn/systems.hpp"

using namespace measdyn;

namespace {

std::shared_ptr<const MetricSpace> grid8() {
  return std::make_shared<const MetricSpace>(MetricSpace::interval_grid(Rat(0), Rat(1), 8));
}

}  // namespace

TEST_CASE("measure construction normalizes its atom list") {
  auto sp = grid8();

  SECTION("atoms are sorted by point and duplicates merge") {
    const DiscreteMeasure m(sp, {{5, rat(1, 4)}, {2, rat(1, 2)}, {5, rat(1, 4)}});
    REQUIRE(m.support_size() == 2);
    REQUIRE(m.atoms()[0].point == 2);
    REQUIRE(m.atoms()[1].point == 5);
    REQUIRE(m.atoms()[1].weight == rat(1, 2));
  }
  SECTION("zero-weight atoms are dropped") {
    const DiscreteMeasure m(sp, {{1, Rat(1)}, {4, Rat(0)}});
    REQUIRE(m.support_size() == 1);
    REQUIRE(m.weight_at(4) == 0);
  }
  SECTION("weights must sum to one exactly") {
    REQUIRE_THROWS_WITH(DiscreteMeasure(sp, {{0, rat(1, 3)}, {1, rat(1, 3)}}),
                        Catch::Matchers::ContainsSubstring("must sum to one exactly"));
  }
  SECTION("negative weights are rejected") {
    REQUIRE_THROWS_AS(DiscreteMeasure(sp, {{0, rat(3, 2)}, {1, rat(-1, 2)}}), Error);
  }
  SECTION("out-of-range support points are rejected") {
    REQUIRE_THROWS_AS(DiscreteMeasure(sp, {{42, Rat(1)}}), Error);
  }
}

TEST_CASE("dirac and empirical measures") {
  auto sp = grid8();
  const DiscreteMeasure d = DiscreteMeasure::dirac(sp, 3);
  REQUIRE(d.support_size() == 1);
  REQUIRE(d.weight_at(3) == 1);

  const DiscreteMeasure e = DiscreteMeasure::empirical(sp, {1, 5, 1, 7});
  REQUIRE(e.weight_at(1) == rat(1, 2));
  REQUIRE(e.weight_at(5) == rat(1, 4));
  REQUIRE(e.weight_at(7) == rat(1, 4));
  REQUIRE(e.mass({1, 5}) == rat(3, 4));
  REQUIRE(e.mass({}) == 0);
  REQUIRE(e.mass({0, 2, 3}) == 0);
}

TEST_CASE("measure equality is support-and-weights equality") {
  auto sp = grid8();
  const DiscreteMeasure a(sp, {{2, rat(1, 2)}, {6, rat(1, 2)}});
  const DiscreteMeasure b(sp, {{6, rat(1, 2)}, {2, rat(1, 4)}, {2, rat(1, 4)}});
  REQUIRE(a == b);
  REQUIRE(a != DiscreteMeasure::dirac(sp, 2));
}

TEST_CASE("mix forms exact convex combinations") {
  auto sp = grid8();
  const DiscreteMeasure a = DiscreteMeasure::dirac(sp, 0);
  const DiscreteMeasure b = DiscreteMeasure::dirac(sp, 8);
  const DiscreteMeasure m = mix({{rat(1, 3), a}, {rat(2, 3), b}});
  REQUIRE(m.weight_at(0) == rat(1, 3));
  REQUIRE(m.weight_at(8) == rat(2, 3));

  SECTION("coefficients must sum to one") {
    REQUIRE_THROWS_AS(mix({{rat(1, 3), a}, {rat(1, 3), b}}), Error);
  }
  SECTION("mixing a measure with itself is the identity") {
    REQUIRE(mix({{rat(1, 2), a}, {rat(1, 2), a}}) == a);
  }
}

TEST_CASE("pushforward moves mass along the map and is linear") {
  SystemDef sys = zoo_fig1(16);
  auto sp = sys.space;
  Rng rng(3);

  SECTION("pushforward of a dirac is the dirac of the image") {
    for (int p = 0; p < sp->size(); ++p) {
      const DiscreteMeasure img = push_step(sys, DiscreteMeasure::dirac(sp, p), 0);
      REQUIRE(img.support_size() == 1);
    }
  }
  SECTION("pushforward respects mixtures exactly") {
    for (int trial = 0; trial < 50; ++trial) {
      const int pa = static_cast<int>(rng.below(static_cast<std::uint64_t>(sp->size())));
      const int pb = static_cast<int>(rng.below(static_cast<std::uint64_t>(sp->size())));
      const DiscreteMeasure a = DiscreteMeasure::empirical(sp, {pa, pb});
      const DiscreteMeasure b = DiscreteMeasure::dirac(sp, pb);
      const Rat t = rat(static_cast<long>(rng.below(65)), 64);
      const DiscreteMeasure lhs = push_step(sys, mix({{t, a}, {Rat(1) - t, b}}), 0);
      const DiscreteMeasure rhs =
          mix({{t, push_step(sys, a, 0)}, {Rat(1) - t, push_step(sys, b, 0)}});
      REQUIRE(lhs == rhs);
    }
  }
  SECTION("total mass is conserved") {
    const DiscreteMeasure m = DiscreteMeasure::empirical(sp, {0, 4, 9, 13});
    std::vector<int> all;
    for (int i = 0; i < sp->size(); ++i) all.push_back(i);
    REQUIRE(push_step(sys, m, 0).mass(all) == 1);
  }
}

TEST_CASE("weights from the rng helper are exact grid fractions") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const std::vector<Rat> w = rng.weights(4, 40);
    Rat total(0);
    for (const Rat& x : w) {
      total += x;
      REQUIRE(x >= 0);
      REQUIRE(x.get_den() <= 40);
    }
    REQUIRE(total == 1);
  }
}
