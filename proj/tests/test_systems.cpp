#include <catch2/catch_amalgamated.hpp>

#include "measdyn/systems.hpp"

using namespace measdyn;

namespace {

std::vector<std::string> orbit_labels(const SystemDef& sys, const std::string& from,
                                      long steps) {
  std::vector<std::string> out;
  for (const int p : orbit(sys, sys.space->index_of(from), steps))
    out.push_back(sys.space->label(p));
  return out;
}

}  // namespace

TEST_CASE("the zig-zag interval map sends -1/2 -> 1 -> -1 -> 0 and parks") {
  const SystemDef sys = zoo_fig1(16);
  REQUIRE(orbit_labels(sys, "-1/2", 6) ==
          std::vector<std::string>{"-1/2", "1", "-1", "0", "0", "0", "0"});
  // 0 is the unique interior fixed point
  const int zero = sys.space->index_of("0");
  REQUIRE(apply(*sys.space, sys.map_at(0), zero) == zero);
}

TEST_CASE("exact evaluation of the flat-then-steep and squaring maps") {
  SECTION("flat-then-steep: 0 on [0,1/2], then 2x-1") {
    const MapSpec f = zoo_ex34(16).maps[0];
    REQUIRE(apply_exact(f, rat(1, 4)) == 0);
    REQUIRE(apply_exact(f, rat(1, 2)) == 0);
    REQUIRE(apply_exact(f, rat(3, 4)) == rat(1, 2));
    REQUIRE(apply_exact(f, Rat(1)) == 1);
  }
  SECTION("squaring map on the grid") {
    const SystemDef sys = zoo_ex35(16);
    REQUIRE(apply_exact(sys.maps[0], rat(1, 2)) == rat(1, 4));
    REQUIRE(apply_exact(sys.maps[0], Rat(1)) == 1);
    // under grid semantics the image snaps to the nearest grid point
    const int x = sys.space->snap(rat(3, 4));
    REQUIRE(sys.space->coord(apply(*sys.space, sys.maps[0], x)) == rat(9, 16));
  }
}

TEST_CASE("two-point swap alternates and squares to the identity") {
  const SystemDef sys = zoo_swap2();
  REQUIRE(orbit_labels(sys, "a", 4) == std::vector<std::string>{"a", "b", "a", "b", "a"});
}

TEST_CASE("compactified shift walks right and absorbs at infinity") {
  const SystemDef sys = zoo_zshift(5);
  REQUIRE(orbit_labels(sys, "3", 4) == std::vector<std::string>{"3", "4", "5", "inf", "inf"});
  REQUIRE(orbit_labels(sys, "-5", 2) == std::vector<std::string>{"-5", "-4", "-3"});
  REQUIRE(orbit_labels(sys, "inf", 1) == std::vector<std::string>{"inf", "inf"});
}

TEST_CASE("connect-the-dots family converges uniformly to the identity") {
  auto sp = std::make_shared<const MetricSpace>(
      MetricSpace::interval_grid(Rat(0), Rat(1), 180));

  SECTION("each member fixes the lattice i/m") {
    for (long m = 1; m <= 5; ++m) {
      const MapSpec f = fm_map(m);
      for (long i = 0; i <= m; ++i) REQUIRE(apply_exact(f, rat(i, m)) == rat(i, m));
    }
  }
  SECTION("up-nodes move one slot right, down-nodes one slot left") {
    const long m = 3;
    const MapSpec f = fm_map(m);
    for (long i = 0; i + 1 < m; ++i)
      REQUIRE(apply_exact(f, rat(3 * i + 1, 3 * m)) == rat(3 * (i + 1) + 1, 3 * m));
    for (long i = 1; i < m; ++i)
      REQUIRE(apply_exact(f, rat(3 * i + 2, 3 * m)) == rat(3 * (i - 1) + 2, 3 * m));
  }
  SECTION("uniform distance to the identity is exactly 1/m from m = 2 on") {
    const std::vector<Rat> expect = {rat(2, 3),  rat(1, 2), rat(1, 3),
                                     rat(1, 4), rat(1, 5), rat(1, 6)};
    for (long m = 1; m <= 6; ++m)
      REQUIRE(uniform_distance(*sp, fm_map(m), map_identity()) ==
              expect[static_cast<std::size_t>(m - 1)]);
  }
}

TEST_CASE("the staircase schedule switches maps at recorded block ends") {
  const FmSchedule fs = zoo_fm_schedule(16, 3);
  REQUIRE(fs.block_ends == std::vector<long>{1, 3, 4});
  // times 0..s1-1 use F_1, then F_2 up to s2-1, and so on
  const SystemDef& sys = fs.system;
  REQUIRE(sys.generator == Generator::Listed);
  REQUIRE(static_cast<long>(sys.maps.size()) == fs.block_ends.back());

  SECTION("beyond the listed prefix the tail map applies forever") {
    const int x = sys.space->snap(rat(1, 7));
    const int direct = apply(*sys.space, sys.tail, x);
    REQUIRE(apply(*sys.space, sys.map_at(fs.block_ends.back()), x) == direct);
    REQUIRE(apply(*sys.space, sys.map_at(fs.block_ends.back() + 10), x) == direct);
  }
}

TEST_CASE("periodic systems cycle through their map list") {
  auto sp = std::make_shared<const MetricSpace>(MetricSpace::finite({"x", "y", "z"}));
  const SystemDef sys = periodic_system(
      sp, {map_table({1, 2, 0}, "rot"), map_table({0, 1, 2}, "id")}, "rot-then-id");
  REQUIRE(orbit_labels(sys, "x", 4) == std::vector<std::string>{"x", "y", "y", "z", "z"});
}

TEST_CASE("circle rotation advances by the exact angle") {
  const SystemDef sys = zoo_circle_wm(10, 4);
  REQUIRE(sys.space->kind() == SpaceKind::CircleGrid);
  // whatever the word pattern, every step stays on the circle grid
  const std::vector<int> o = orbit(sys, 0, 10);
  for (const int p : o) {
    REQUIRE(p >= 0);
    REQUIRE(p < sys.space->size());
  }
}

TEST_CASE("pushforward distributes over the support") {
  const SystemDef sys = zoo_fig1(8);
  auto sp = sys.space;
  const DiscreteMeasure m =
      DiscreteMeasure(sp, {{sp->index_of("-1/2"), rat(1, 4)}, {sp->index_of("0"), rat(3, 4)}});
  const DiscreteMeasure pushed = push_step(sys, m, 0);
  REQUIRE(pushed.weight_at(sp->index_of("1")) == rat(1, 4));
  REQUIRE(pushed.weight_at(sp->index_of("0")) == rat(3, 4));

  SECTION("push_range composes single steps") {
    REQUIRE(push_range(sys, m, 0, 3) ==
            push_step(sys, push_step(sys, push_step(sys, m, 0), 1), 2));
  }
}
