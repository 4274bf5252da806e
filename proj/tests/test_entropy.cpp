#include <catch2/catch_amalgamated.hpp>

#include "measdyn/entropy.hpp"
#include "measdyn/measure_grid.hpp"

using namespace measdyn;

namespace {

std::vector<int> full_sample(const FiniteView& view) {
  std::vector<int> s;
  for (int i = 0; i < view.n_states; ++i) s.push_back(i);
  return s;
}

std::vector<long> n_window(long n_max) {
  std::vector<long> n;
  for (long i = 1; i <= n_max; ++i) n.push_back(i);
  return n;
}

}  // namespace

TEST_CASE("time sequences are strictly increasing positive integers") {
  const TimeSequence a = time_sequence_integers(5);
  REQUIRE(a.entries == std::vector<long>{1, 2, 3, 4, 5});
  REQUIRE_THROWS_AS(time_sequence({1, 1, 2}), Error);
  REQUIRE_THROWS_AS(time_sequence({0, 1}), Error);
}

TEST_CASE("separated sets on the two-point swap hold both points at every depth") {
  const FiniteView view = make_base_view(zoo_swap2());
  const TimeSequence a = time_sequence_integers(6);
  for (const char* method : {"greedy", "exact"}) {
    for (long n = 1; n <= 4; ++n) {
      const SeparatedResult r = separated_set(view, full_sample(view), n, rat(1, 2), a,
                                              method);
      REQUIRE(r.count == 2);
      REQUIRE(r.method == method);
    }
  }
}

TEST_CASE("the exact clique search never returns less than the greedy set") {
  const FiniteView view = make_base_view(zoo_fig1(24));
  const TimeSequence a = time_sequence_integers(8);
  for (const Rat& eps : {rat(1, 4), rat(1, 8)}) {
    for (long n = 1; n <= 4; ++n) {
      const long greedy = separated_set(view, full_sample(view), n, eps, a).count;
      const long exact = separated_set(view, full_sample(view), n, eps, a, "exact").count;
      REQUIRE(exact >= greedy);
    }
  }
}

TEST_CASE("greedy separated counts never shrink as depth grows") {
  const FiniteView view = make_base_view(zoo_fig1(64));
  const TimeSequence a = time_sequence_integers(10);
  long prev = 0;
  for (long n = 1; n <= 8; ++n) {
    const long cur = separated_set(view, full_sample(view), n, rat(1, 16), a).count;
    REQUIRE(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("the exact method refuses oversized samples") {
  const FiniteView view = make_base_view(zoo_fig1(128));
  REQUIRE(view.n_states > 64);
  REQUIRE_THROWS_WITH(
      separated_set(view, full_sample(view), 2, rat(1, 8), time_sequence_integers(4),
                    "exact"),
      Catch::Matchers::ContainsSubstring(
          "exact separated sets are capped at 64 sample points; use the greedy method"));
}

TEST_CASE("entropy estimates vanish on rigid systems") {
  SECTION("identity map") {
    auto sp = std::make_shared<const MetricSpace>(
        MetricSpace::interval_grid(Rat(0), Rat(1), 19));
    const SystemDef sys = autonomous_system(sp, map_identity(), "still");
    for (const char* method : {"greedy", "exact"}) {
      const EntropyEstimate est = entropy_estimate_system(
          sys, time_sequence_integers(8), {rat(1, 8), rat(1, 16)}, n_window(6), {}, method);
      REQUIRE(est.estimate == 0.0);
    }
  }
  SECTION("two-point swap") {
    const EntropyEstimate est = entropy_estimate_system(
        zoo_swap2(), time_sequence_integers(8), {rat(1, 2)}, n_window(6));
    REQUIRE(est.estimate == 0.0);
  }
}

TEST_CASE("entropy estimate of the zig-zag interval map lands in the derived band") {
  const EntropyEstimate est = entropy_estimate_system(
      zoo_fig1(4096), time_sequence_integers(14),
      {rat(1, 8), rat(1, 16), rat(1, 32), rat(1, 64)}, n_window(8));
  REQUIRE(est.estimate == Catch::Approx(0.328140476991).epsilon(1e-9));
  REQUIRE(est.estimate > 0.28);
  REQUIRE(est.estimate < 0.42);
  REQUIRE(est.rows.size() == 32);  // 4 eps values, 8 depths

  SECTION("per-eps rates are the nonnegative parts of fitted slopes") {
    for (const auto& [eps, rate] : est.rates) REQUIRE(rate >= 0.0);
  }
  SECTION("the csv export carries one line per row plus a header") {
    const std::string csv = entropy_csv(est);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 33);
    REQUIRE(csv.rfind("eps,n,a_n,s_n,method,rate\n", 0) == 0);
  }
}

TEST_CASE("dirac embedding keeps induced separated counts at or above the base") {
  const GrowthTable t = induced_entropy_growth(zoo_fig1(8), {1, 2, 3},
                                               time_sequence_integers(6), rat(1, 8), 3);
  REQUIRE(t.all_ok);
  REQUIRE(t.rows.size() == 3);
  for (const GrowthRow& row : t.rows) {
    REQUIRE(row.s_induced >= row.s_base);
    REQUIRE(row.n_states >= 9);  // Diracs alone replicate the base space
  }
}

TEST_CASE("dirac-only samples replay the base counts exactly") {
  const SystemDef sys = zoo_fig1(16);
  const FiniteView base = make_base_view(sys);
  const InducedView induced = make_induced_view(sys, 2);
  const TimeSequence a = time_sequence_integers(6);

  std::vector<int> dirac_sample;
  for (int i = 0; i < base.n_states; ++i) {
    const DiscreteMeasure d = DiscreteMeasure::dirac(sys.space, i);
    const auto it = std::find(induced.states.begin(), induced.states.end(), d);
    REQUIRE(it != induced.states.end());
    dirac_sample.push_back(static_cast<int>(it - induced.states.begin()));
  }

  for (long n = 1; n <= 4; ++n) {
    const long s_base =
        separated_set(base, full_sample(base), n, rat(1, 8), a, "exact").count;
    const long s_dirac =
        separated_set(induced.view, dirac_sample, n, rat(1, 8), a, "exact").count;
    REQUIRE(s_base == s_dirac);
  }
}
