#include <catch2/catch_amalgamated.hpp>

#include "measdyn/prohorov.hpp"
#include "measdyn/rng.hpp"

using namespace measdyn;

namespace {

std::shared_ptr<const MetricSpace> two_points() {
  return std::make_shared<const MetricSpace>(MetricSpace::finite({"a", "b"}));
}

// 20 labelled points on a line with gaps of 1/7, so distances cross 1.
std::shared_ptr<const MetricSpace> long_line() {
  std::vector<std::string> labels;
  std::vector<Rat> d;
  for (int i = 0; i < 20; ++i) labels.push_back("p" + std::to_string(i));
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) d.push_back(rat(std::abs(i - j), 7));
  return std::make_shared<const MetricSpace>(
      MetricSpace::finite_table(std::move(labels), std::move(d)));
}

DiscreteMeasure random_measure(const std::shared_ptr<const MetricSpace>& space, Rng& rng,
                               int max_support) {
  const int cap = std::min<int>(max_support, space->size());
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap)));
  const std::vector<int> pts = rng.distinct(space->size(), k);
  const std::vector<Rat> w = rng.weights(k, 40);
  std::vector<Atom> atoms;
  for (int i = 0; i < k; ++i)
    atoms.push_back({pts[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i)]});
  return DiscreteMeasure(space, std::move(atoms));
}

}  // namespace

TEST_CASE("dirac pairs realize the truncated point distance") {
  auto sp = long_line();
  for (int i = 0; i < sp->size(); ++i)
    for (int j = 0; j < sp->size(); ++j) {
      const DiscreteMeasure a = DiscreteMeasure::dirac(sp, i);
      const DiscreteMeasure b = DiscreteMeasure::dirac(sp, j);
      REQUIRE(prohorov_metric(a, b) == rat_min(sp->dist(i, j), Rat(1)));
    }
}

TEST_CASE("half-and-half split of two far points sits at exactly one half") {
  auto sp = two_points();
  const DiscreteMeasure b = DiscreteMeasure::dirac(sp, 1);
  const DiscreteMeasure split = DiscreteMeasure::empirical(sp, {0, 1});
  REQUIRE(prohorov_metric(b, split) == rat(1, 2));
  REQUIRE(prohorov_fast(b, split) == rat(1, 2));
  REQUIRE(prohorov_fast(split, b) == rat(1, 2));
}

TEST_CASE("moving mass t to anywhere moves the measure by at most t") {
  auto sp = long_line();
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const DiscreteMeasure mu = random_measure(sp, rng, 5);
    const DiscreteMeasure nu = random_measure(sp, rng, 5);
    const Rat t = rat(static_cast<long>(rng.below(41)), 40);
    const DiscreteMeasure mixed = mix({{Rat(1) - t, mu}, {t, nu}});
    REQUIRE(prohorov_metric(mu, mixed) <= t);
  }
}

TEST_CASE("min-cut solver agrees with the set-enumeration oracle") {
  Rng rng(23);
  const auto check_space = [&](std::shared_ptr<const MetricSpace> sp, int pairs) {
    for (int trial = 0; trial < pairs; ++trial) {
      const DiscreteMeasure mu = random_measure(sp, rng, 6);
      const DiscreteMeasure nu = random_measure(sp, rng, 6);
      REQUIRE(prohorov_fast(mu, nu) == prohorov_bruteforce(mu, nu));
    }
  };
  check_space(long_line(), 60);
  check_space(std::make_shared<const MetricSpace>(
                  MetricSpace::interval_grid(Rat(0), Rat(1), 16)),
              60);
  check_space(std::make_shared<const MetricSpace>(MetricSpace::compactified_integers(5)),
              60);
}

TEST_CASE("the one-sided distance is symmetric on random pairs") {
  auto sp = std::make_shared<const MetricSpace>(
      MetricSpace::interval_grid(Rat(-1), Rat(1), 24));
  Rng rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    const DiscreteMeasure mu = random_measure(sp, rng, 6);
    const DiscreteMeasure nu = random_measure(sp, rng, 6);
    REQUIRE(prohorov_fast(mu, nu) == prohorov_fast(nu, mu));
  }
}

TEST_CASE("metric axioms hold for the symmetrized distance") {
  auto sp = long_line();
  Rng rng(31);

  SECTION("identity of indiscernibles") {
    for (int trial = 0; trial < 40; ++trial) {
      const DiscreteMeasure mu = random_measure(sp, rng, 6);
      const DiscreteMeasure nu = random_measure(sp, rng, 6);
      REQUIRE(prohorov_metric(mu, mu) == 0);
      if (mu != nu) REQUIRE(prohorov_metric(mu, nu) > 0);
    }
  }
  SECTION("triangle inequality on random triples") {
    for (int trial = 0; trial < 40; ++trial) {
      const DiscreteMeasure a = random_measure(sp, rng, 5);
      const DiscreteMeasure b = random_measure(sp, rng, 5);
      const DiscreteMeasure c = random_measure(sp, rng, 5);
      REQUIRE(prohorov_metric(a, c) <= prohorov_metric(a, b) + prohorov_metric(b, c));
    }
  }
}

TEST_CASE("distances never exceed one") {
  auto sp = long_line();
  const DiscreteMeasure lo = DiscreteMeasure::dirac(sp, 0);
  const DiscreteMeasure hi = DiscreteMeasure::dirac(sp, 19);
  REQUIRE(sp->dist(0, 19) > 1);
  REQUIRE(prohorov_metric(lo, hi) == 1);
}

TEST_CASE("guard rails") {
  SECTION("the oracle refuses oversized supports") {
    auto sp = std::make_shared<const MetricSpace>(
        MetricSpace::interval_grid(Rat(0), Rat(1), 20));
    std::vector<int> pts;
    for (int i = 0; i < 17; ++i) pts.push_back(i);
    const DiscreteMeasure big = DiscreteMeasure::empirical(sp, pts);
    const DiscreteMeasure tiny = DiscreteMeasure::dirac(sp, 0);
    REQUIRE_THROWS_WITH(prohorov_bruteforce(big, tiny),
                        Catch::Matchers::ContainsSubstring("capped at support size 16"));
    REQUIRE_NOTHROW(prohorov_fast(big, tiny));
  }
  SECTION("measures must share a space") {
    auto sp1 = two_points();
    auto sp2 = two_points();
    REQUIRE_THROWS_AS(
        prohorov_fast(DiscreteMeasure::dirac(sp1, 0), DiscreteMeasure::dirac(sp2, 0)),
        Error);
  }
}
