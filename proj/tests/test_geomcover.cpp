#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "capcover/errors.hpp"
#include "capcover/geomcover.hpp"

using namespace capcover;
using namespace capcover::geomcover;

namespace {

SetCoverInstance instance(std::vector<long> reqs, std::vector<std::pair<Rational, std::vector<size_t>>> sets) {
  SetCoverInstance inst;
  for (size_t e = 0; e < reqs.size(); ++e) inst.elements.push_back({"e" + std::to_string(e + 1), reqs[e], {}, {}});
  for (size_t s = 0; s < sets.size(); ++s)
    inst.sets.push_back({"s" + std::to_string(s + 1), sets[s].first, sets[s].second, {}});
  return inst;
}

std::vector<std::string> seq(const std::string& letters) {
  std::vector<std::string> out;
  for (char c : letters) out.emplace_back(1, c);
  return out;
}

}  // namespace

TEST_CASE("greedy_multicover") {
  auto cover = greedy_multicover(instance({1}, {{1, {0}}, {3, {0}}}));
  CHECK(cover.sets == std::vector<size_t>{0});
  CHECK(cover.cost == 1);

  cover = greedy_multicover(instance({2}, {{1, {0}}, {2, {0}}, {4, {0}}}));
  CHECK(cover.sets == std::vector<size_t>{0, 1});
  CHECK(cover.cost == 3);

  const auto pair = instance({1, 1}, {{2, {0, 1}}, {Rational(3, 2), {0}}, {Rational(3, 2), {1}}});
  cover = greedy_multicover(pair);
  CHECK(cover.sets == std::vector<size_t>{0});
  CHECK(is_feasible(pair, cover));

  CHECK_THROWS_AS(greedy_multicover(instance({2}, {{1, {0}}})), StageError);
}

TEST_CASE("exact_multicover") {
  const auto pair = instance({1, 1}, {{2, {0, 1}}, {Rational(3, 2), {0}}, {Rational(3, 2), {1}}});
  auto cover = exact_multicover(pair);
  CHECK(cover.sets == std::vector<size_t>{0});
  CHECK(cover.cost == 2);

  cover = exact_multicover(instance({1}, {{5, {0}}}));
  CHECK(cover.sets == std::vector<size_t>{0});

  CHECK_THROWS_AS(exact_multicover(instance({2}, {{1, {0}}})), StageError);
  std::vector<std::pair<Rational, std::vector<size_t>>> many(21, {1, {0}});
  CHECK_THROWS_AS(exact_multicover(instance({1}, many)), InputError);

  // two cheap halves beat the big set
  const auto trap = instance({1, 1, 1, 1}, {{Rational(5, 2), {0, 1, 2, 3}}, {1, {0, 1}}, {1, {2, 3}}});
  CHECK(exact_multicover(trap).cost == 2);
  CHECK(greedy_multicover(trap).cost >= exact_multicover(trap).cost);
}

TEST_CASE("setcover_lp") {
  CHECK(setcover_lp(instance({1}, {{1, {0}}, {1, {0}}})).value == 1);
  CHECK(setcover_lp(instance({2}, {{1, {0}}, {1, {0}}, {1, {0}}})).value == 2);
  const auto pair = instance({1, 1}, {{2, {0, 1}}, {Rational(3, 2), {0}}, {Rational(3, 2), {1}}});
  CHECK(setcover_lp(pair).value == 2);
  CHECK_THROWS_AS(setcover_lp(instance({2}, {{1, {0}}})), StageError);
}

TEST_CASE("rounding modes") {
  CHECK(parse_rounding("greedy") == Rounding::kGreedy);
  CHECK(parse_rounding("exact") == Rounding::kExact);
  CHECK(parse_rounding("auto") == Rounding::kAuto);
  CHECK_THROWS_AS(parse_rounding("random"), InputError);
  const auto trap = instance({1, 1, 1, 1}, {{Rational(5, 2), {0, 1, 2, 3}}, {1, {0, 1}}, {1, {2, 3}}});
  CHECK(round_cover(trap, Rounding::kAuto).cost == 2);
}

TEST_CASE("setcover json") {
  const auto inst = parse_setcover(R"({"elements": [{"id": "a", "req": 2}, {"id": "b", "req": 1}],
    "sets": [{"id": "s", "cost": 1, "covers": ["a", "b"]}, {"id": "t", "cost": "1/2", "covers": ["a"]}]})");
  CHECK(inst.elements[0].req == 2);
  CHECK(inst.sets[1].cost == Rational(1, 2));
  CHECK(inst.sets[0].covers == std::vector<size_t>{0, 1});
  const auto again = parse_setcover(to_json(inst));
  CHECK(again.sets.size() == 2);
  CHECK(again.sets[1].covers == std::vector<size_t>{0});
  CHECK_THROWS_AS(parse_setcover(R"({"elements": [{"id": "a", "req": 1}], "sets": [{"id": "s", "cost": 1, "covers": ["zz"]}]})"),
                  InputError);
  CHECK_THROWS_AS(parse_setcover(R"({"elements": [{"id": "a", "req": 0}], "sets": []})"), InputError);
}

TEST_CASE("upper_envelope") {
  SUBCASE("rectangle inside a lower, wider one") {
    const auto report = upper_envelope({make_rect("a", 0, 10, 3, 1), make_rect("b", 2, 6, 5, 1)});
    CHECK(report.sequence == seq("aba"));
    CHECK(report.edges.size() == 3);
    CHECK(report.edges[1].from == 2);
    CHECK(report.edges[1].to == 6);
    CHECK(report.ds_order_ok());
  }
  SUBCASE("rising triangles") {
    const auto report = upper_envelope(
        {make_triangle("t1", 0, 5, Slope::kRise, 1), make_triangle("t2", 3, 8, Slope::kRise, 1)}, 1);
    CHECK(report.sequence == std::vector<std::string>{"t1", "t2"});
    CHECK(report.ds_order_ok());
  }
  SUBCASE("single object") {
    const auto report = upper_envelope({make_rect("a", 1, 2, 1, 1)});
    CHECK(report.edges.size() == 1);
  }
  SUBCASE("empty") { CHECK(upper_envelope({}).edges.empty()); }
  SUBCASE("identical rectangles tie to the smaller id") {
    const auto report = upper_envelope({make_rect("b", 0, 4, 2, 1), make_rect("a", 0, 4, 2, 1)});
    CHECK(report.sequence == seq("a"));
  }
  SUBCASE("crossing slopes") {
    // rising 0..6 alone until 2, then falling 2..8 on top until they meet at 4
    const auto report = upper_envelope(
        {make_triangle("r", 0, 6, Slope::kRise, 1), make_triangle("f", 2, 8, Slope::kFall, 1)});
    REQUIRE(report.sequence == std::vector<std::string>{"r", "f", "r", "f"});
    CHECK(report.edges[0].from == 0);
    CHECK(report.edges[1].from == 2);
    CHECK(report.edges[1].to == 4);
    CHECK(report.edges[2].to == 6);
    CHECK_FALSE(report.ds_order_ok());
  }
  SUBCASE("nested abcba") {
    const auto report = upper_envelope(
        {make_rect("a", 0, 10, 1, 1), make_rect("b", 1, 9, 2, 1), make_rect("c", 4, 6, 3, 1)});
    CHECK(report.sequence == seq("abcba"));
    CHECK(report.ds_order_ok());
    CHECK(report.longest_alternation == 3);
    const auto doc = nlohmann::json::parse(to_json(report));
    CHECK(doc["count"] == 5);
    CHECK(doc["ds_order_ok"] == true);
  }
  SUBCASE("owner") {
    const std::vector<Profile> objects = {make_rect("a", 0, 10, 3, 1), make_rect("b", 2, 6, 5, 1)};
    CHECK(envelope_owner(objects, 1) == 0);
    CHECK(envelope_owner(objects, 3) == 1);
    CHECK(envelope_owner(objects, 11) == std::nullopt);
  }
}

TEST_CASE("ds_order_check") {
  CHECK_FALSE(ds_order_check(seq("abcba"), 2).has_value());
  const auto witness = ds_order_check(seq("abab"), 2);
  REQUIRE(witness.has_value());
  CHECK(witness->size() == 4);
  CHECK(ds_order_check(seq("aba"), 1).has_value());
  CHECK_FALSE(ds_order_check(seq("ab"), 1).has_value());
  CHECK(longest_alternation(seq("abcba")) == 3);
  CHECK(longest_alternation(seq("abacab")) == 4);
  CHECK(longest_alternation(seq("a")) == 1);
}
