#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capcover/errors.hpp"
#include "capcover/geomcover.hpp"
#include "capcover/lift.hpp"
#include "capcover/suites.hpp"

using namespace capcover;
using namespace capcover::lift;

namespace {

// One point with d' = 7 and three residual profiles of classes 0, 1, 2.
struct Example {
  CapCoverInstance inst;
  kclp::ResidualInstance res;
};

Example example() {
  Example e;
  e.inst.points = {{0, 7}};
  e.inst.profiles = {make_rect("z1", 0, 1, 7, 1), make_rect("z2", 0, 1, 5, 1), make_rect("z3", 0, 1, 2, 1)};
  e.res.beta = 8;
  e.res.residual_profiles = {0, 1, 2};
  e.res.scaled_x = {Rational(1, 2), Rational(3, 4), Rational(1)};
  e.res.residual_demand = {7};
  return e;
}

}  // namespace

TEST_CASE("profile_class") {
  CHECK(profile_class(5, 7) == 1);
  CHECK(profile_class(7, 7) == 0);
  CHECK(profile_class(1, 7) == std::nullopt);
  CHECK(profile_class(Rational(7, 4), 7) == 2);
  CHECK(profile_class(Rational(1, 2), Rational(1, 2)) == 0);
  CHECK(profile_class(Rational(1, 4), Rational(1, 2)) == std::nullopt);
  CHECK_THROWS_AS(profile_class(1, 0), InputError);
}

TEST_CASE("build_lifted") {
  const auto e = example();
  const auto lifted = build_lifted(e.inst, e.res);
  REQUIRE(lifted.elements.size() == 2);
  CHECK(lifted.elements[0].level == 1);
  CHECK(lifted.elements[0].requirement == 1);
  CHECK(lifted.elements[0].height == Rational(7, 2));
  CHECK(lifted.elements[0].members == std::vector<size_t>{0, 1});
  CHECK(lifted.elements[1].level == 2);
  CHECK(lifted.elements[1].requirement == 2);
  CHECK(lifted.elements[1].members == std::vector<size_t>{0, 1, 2});
  CHECK(lifted.unclassified_points.empty());

  SUBCASE("d' <= 1 gives one level") {
    Example small = example();
    small.inst.points[0].demand = Rational(1, 2);
    small.res.residual_demand = {Rational(1, 2)};
    small.res.scaled_x = {Rational(1, 2), Rational(3, 4), Rational(1, 2)};
    const auto l = build_lifted(small.inst, small.res);
    REQUIRE(l.elements.size() == 1);
    CHECK(l.elements[0].level == 0);
    CHECK(l.elements[0].requirement == 1);
  }
  SUBCASE("no class at a point is flagged") {
    Example none = example();
    none.inst.profiles = {make_rect("z1", 0, 1, 1, 1)};
    none.res.residual_profiles = {0};
    none.res.scaled_x = {Rational(1, 2)};
    const auto l = build_lifted(none.inst, none.res);
    CHECK(l.elements.empty());
    CHECK(l.unclassified_points == std::vector<size_t>{0});
  }
}

TEST_CASE("induced_fractional") {
  const auto e = example();
  const auto lifted = build_lifted(e.inst, e.res);
  const auto induced = induced_fractional(lifted);
  CHECK(induced.x == std::vector<Rational>{Rational(1, 2), Rational(3, 4), 1});
  CHECK(induced.objective == Rational(9, 4));

  LiftedInstance broken = lifted;
  broken.elements[1].requirement = 3;
  CHECK_THROWS_AS(induced_fractional(broken), VerificationError);

  const LiftedInstance empty;
  CHECK(induced_fractional(empty).objective == 0);
}

TEST_CASE("map_back") {
  const auto e = example();
  const auto lifted = build_lifted(e.inst, e.res);
  auto mapped = map_back(lifted, {1, 2}, e.inst, e.res);
  CHECK(mapped.verdict);
  CHECK(mapped.profiles == std::vector<size_t>{1, 2});
  mapped = map_back(lifted, {0, 1, 2}, e.inst, e.res);
  CHECK(mapped.verdict);
  CHECK_THROWS_AS(map_back(lifted, {2}, e.inst, e.res), InputError);
  CHECK_THROWS_AS(map_back(lifted, {1, 1, 2}, e.inst, e.res), InputError);

  SUBCASE("empty lifting") {
    kclp::ResidualInstance done = e.res;
    done.residual_demand = {0};
    const auto l = build_lifted(e.inst, done);
    CHECK(l.elements.empty());
    CHECK(map_back(l, {}, e.inst, done).verdict);
  }
}

TEST_CASE("compose_final on the two-point instance") {
  const auto inst = suites::two_point_instance();
  const auto frac = kclp::solve_kc_lp(inst);
  const auto res = kclp::select_heavy(inst, frac.x);
  const auto lifted = build_lifted(inst, res);
  const auto induced = induced_fractional(lifted);
  const auto sc = geomcover::from_lifted(lifted);
  const auto lp = geomcover::setcover_lp(sc);
  const auto cover = geomcover::round_cover(sc, geomcover::Rounding::kAuto);
  const auto mapped = map_back(lifted, cover.sets, inst, res);
  REQUIRE(mapped.verdict);
  const auto final_cover = compose_final(inst, frac, res, induced, lp.value, mapped);
  CHECK(verify_capcover(inst, final_cover.selection));
  CHECK(final_cover.ledger.total == 2);
  CHECK(final_cover.ledger.w_star >= Rational(1));
  CHECK(final_cover.ledger.total <= final_cover.ledger.bound);
  CHECK(final_cover.ledger.within_bound);
  CHECK(final_cover.ledger.heavy_cost <= 8 * final_cover.ledger.w_star);
  CHECK(final_cover.ledger.total / exact_capcover(inst).cost <= 2);
}
