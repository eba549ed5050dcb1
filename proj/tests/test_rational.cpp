#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "capcover/errors.hpp"
#include "capcover/json_util.hpp"
#include "capcover/profile.hpp"
#include "capcover/rational.hpp"
#include "capcover/simplex.hpp"

using namespace capcover;

TEST_CASE("parse and print rationals") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-2") == -2);
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("2.5E2") == 250);
  CHECK(parse_rational("7/4") == Rational(7, 4));
  CHECK(parse_rational(" 6/4 ") == Rational(3, 2));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational(""));
  CHECK(to_string(ratio(6, 4)) == "3/2");
  CHECK(ratio(6, 4) == Rational(3, 2));
  CHECK(to_string(Rational(4)) == "4");
  CHECK(to_decimal(Rational(1, 3), 4) == "0.3333");
  CHECK(to_decimal(Rational(2, 3), 2) == "0.67");
  CHECK(to_decimal(Rational(-1, 8), 2) == "-0.13");
}

TEST_CASE("floor, ceil and powers of two") {
  CHECK(floor(Rational(7, 2)) == 3);
  CHECK(floor(Rational(-7, 2)) == -4);
  CHECK(ceil(Rational(7, 2)) == 4);
  CHECK(ceil(Rational(4)) == 4);
  CHECK(pow2(3) == 8);
  CHECK(pow2(-2) == Rational(1, 4));
  CHECK(pow2_ceil(Rational(10)) == 16);
  CHECK(pow2_ceil(Rational(16)) == 16);
  CHECK(pow2_ceil(Rational(3, 10)) == Rational(1, 2));
  CHECK(floor_log2(Rational(7)) == 2);
  CHECK(floor_log2(Rational(8)) == 3);
  CHECK(floor_log2(Rational(1)) == 0);
  CHECK(floor_log2(Rational(1, 2)) == -1);
}

TEST_CASE("snapshot keeps twelve digits") {
  CHECK(snapshot(0.1) == Rational(1, 10));
  CHECK(snapshot(0.9999999999999) == 1);
  CHECK(snapshot(1.0 / 3.0) == Rational(333333333333, 1000000000000));
  CHECK(snapshot(-2.5) == Rational(-5, 2));
}

TEST_CASE("json rationals") {
  using nlohmann::json;
  CHECK(rational_from_json(json(3), "x") == 3);
  CHECK(rational_from_json(json(0.1), "x") == Rational(1, 10));
  CHECK(rational_from_json(json("5/3"), "x") == Rational(5, 3));
  CHECK_THROWS_AS(rational_from_json(json("x"), "where"), InputError);
  CHECK_THROWS_AS(rational_from_json(json::array(), "where"), InputError);
  CHECK(rational_to_json(Rational(4)) == json(4));
  CHECK(rational_to_json(Rational(1, 4)) == json(0.25));
  CHECK(rational_to_json(Rational(1, 3)) == json("1/3"));
  CHECK_THROWS_AS(parse_document("{"), InputError);
}

TEST_CASE("profile shapes") {
  const Profile rect = make_rect("r", 1, 4, 3, 2);
  CHECK(rect.capacity(0) == 0);
  CHECK(rect.capacity(1) == 3);
  CHECK(rect.capacity(4) == 3);
  CHECK(rect.capacity(Rational(9, 2)) == 0);
  CHECK(rect.peak() == 3);

  const Profile rise = make_triangle("t", 2, 6, Slope::kRise, 1);
  CHECK(rise.capacity(2) == 0);
  CHECK(rise.capacity(5) == 3);
  CHECK(rise.capacity(7) == 0);
  const Profile fall = make_triangle("f", 2, 6, Slope::kFall, 1, 2);
  CHECK(fall.capacity(2) == 8);
  CHECK(fall.capacity(5) == 2);
  CHECK(fall.peak() == 8);

  Profile pwl{"p", PiecewiseShape{{{0, 0}, {2, 2}, {4, 2}, {5, 0}}}, 1, std::nullopt};
  CHECK(pwl.capacity(1) == 1);
  CHECK(pwl.capacity(3) == 2);
  CHECK(pwl.capacity(Rational(9, 2)) == 1);
  CHECK(pwl.capacity(6) == 0);
  CHECK(pwl.segments().size() == 3);

  CHECK_THROWS_AS(validate(make_rect("bad", 3, 1, 1, 1)), InputError);
  CHECK_THROWS_AS(validate(make_rect("bad", 0, 1, -1, 1)), InputError);
  CHECK_THROWS_AS(validate(make_rect("bad", 0, 1, 1, -1)), InputError);
  Profile unsorted{"u", PiecewiseShape{{{1, 0}, {0, 1}}}, 1, std::nullopt};
  CHECK_THROWS_AS(validate(unsorted), InputError);
}

TEST_CASE("covering simplex") {
  using Matrix = Eigen::MatrixXd;
  using Vector = Eigen::VectorXd;

  SUBCASE("knapsack relaxation") {
    // 10 x_A + 9 x_B >= 10, costs (1, 0): x_B = 1, x_A = 0.1
    Matrix A(1, 2);
    A << 10, 9;
    Vector rhs(1), cost(2), upper(2);
    rhs << 10;
    cost << 1, 0;
    upper << 1, 1;
    const auto r = lp::minimize_covering<double>(A, rhs, cost, upper);
    REQUIRE(r.status == lp::Status::kOptimal);
    CHECK(r.objective == doctest::Approx(0.1));
    CHECK(r.x(1) == doctest::Approx(1.0));
  }

  SUBCASE("two rows") {
    // x1 + x2 >= 1, x2 + x3 >= 1, costs (1, 3, 1) -> x1 = x3 = 1
    Matrix A(2, 3);
    A << 1, 1, 0, 0, 1, 1;
    Vector rhs(2), cost(3), upper(3);
    rhs << 1, 1;
    cost << 1, 3, 1;
    upper << 1, 1, 1;
    const auto r = lp::minimize_covering<double>(A, rhs, cost, upper);
    REQUIRE(r.status == lp::Status::kOptimal);
    CHECK(r.objective == doctest::Approx(2.0));
  }

  SUBCASE("infeasible under upper bounds") {
    Matrix A(1, 1);
    A << 1;
    Vector rhs(1), cost(1), upper(1);
    rhs << 2;
    cost << 1;
    upper << 1;
    CHECK(lp::minimize_covering<double>(A, rhs, cost, upper).status == lp::Status::kInfeasible);
  }

  SUBCASE("long double scalar") {
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> A(1, 2);
    A << 2, 3;
    Eigen::Matrix<long double, Eigen::Dynamic, 1> rhs(1), cost(2), upper(2);
    rhs << 3;
    cost << 1, 1;
    upper << 1, 1;
    const auto r = lp::minimize_covering<long double>(A, rhs, cost, upper);
    REQUIRE(r.status == lp::Status::kOptimal);
    CHECK(static_cast<double>(r.objective) == doctest::Approx(1.0));
  }
}
