#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "capcover/errors.hpp"
#include "capcover/gsp.hpp"

using namespace capcover;
using namespace capcover::gsp;

namespace {

Instance make(int machines, std::vector<long> sizes) {
  Instance inst;
  inst.machines = machines;
  for (size_t j = 0; j < sizes.size(); ++j) inst.jobs.push_back({"j" + std::to_string(j + 1), sizes[j], {{{0, 0}}}});
  return inst;
}

std::string error_of(const std::string& doc) {
  try {
    parse_gsp(doc);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_gsp") {
  const auto inst = parse_gsp(R"({"machines": 1, "jobs": [{"id": "a", "size": 2, "cost": [[0, 0]]}]})");
  CHECK(inst.machines == 1);
  CHECK(inst.horizon() == 2);
  CHECK(inst.jobs[0].cost.at(100) == 0);

  CHECK(error_of(R"({"machines": 1, "jobs": [{"id": "a", "size": 2, "cost": [[0, 5], [3, 2]]}]})").find("non-monotone curve") !=
        std::string::npos);
  CHECK(error_of(R"({"machines": 0, "jobs": [{"id": "a", "size": 2, "cost": [[0, 0]]}]})").find("machines must be >= 1") !=
        std::string::npos);
  CHECK(error_of(R"({"machines": 1, "jobs": [{"id": "a", "size": 0, "cost": [[0, 0]]}]})").find("jobs[0].size") !=
        std::string::npos);
  CHECK(error_of(R"({"machines": 1, "jobs": [{"id": "a", "size": 1, "cost": [[1, 0]]}]})").find("time 0") !=
        std::string::npos);
  CHECK(error_of(R"({"machines": 1, "jobs": []})") != "");
  CHECK(error_of(R"({"machines": 1, "jobs": [{"id": "a", "size": 1, "cost": [[0, 0]]}, {"id": "a", "size": 1, "cost": [[0, 0]]}]})")
            .find("duplicate") != std::string::npos);
  CHECK(error_of("[1, 2") != "");
}

TEST_CASE("to_json round trip") {
  const std::string doc = R"({"machines": 2, "jobs": [{"id": "x", "size": 3, "cost": [[0, 0], [2, 1.5], [4, "7/3"]]}]})";
  const auto inst = parse_gsp(doc);
  const auto again = parse_gsp(to_json(inst));
  CHECK(again.machines == 2);
  CHECK(again.jobs[0].cost.breakpoints == inst.jobs[0].cost.breakpoints);
}

TEST_CASE("step curve evaluation") {
  StepCurve f{{{0, 0}, {5, 10}}};
  CHECK(f.at(0) == 0);
  CHECK(f.at(4) == 0);
  CHECK(f.at(5) == 10);
  CHECK(f.at(1000) == 10);
}

TEST_CASE("preprocess") {
  SUBCASE("jump to 10 at t = 5") {
    Instance inst = make(1, {8});
    inst.jobs[0].cost = {{{0, 0}, {5, 10}}};
    // 10 > guess / n: rounds up to 16 on a second candidate ending at v
    auto c = preprocess(inst, 9);
    REQUIRE(c.per_job[0].size() == 2);
    CHECK(c.per_job[0][0].deadline == 4);
    CHECK(c.per_job[0][0].cost == 0);
    CHECK(c.per_job[0][1].deadline == 8);
    CHECK(c.per_job[0][1].cost == 16);
    CHECK(c.per_job[0][1].original_cost == 10);
    // 10 <= guess / n drops to 0: one candidate at v
    c = preprocess(inst, 10);
    REQUIRE(c.per_job[0].size() == 1);
    CHECK(c.per_job[0][0].deadline == 8);
    CHECK(c.per_job[0][0].cost == 0);
  }
  SUBCASE("zero curve") {
    Instance inst = make(1, {3, 2});
    const auto c = preprocess(inst, 1);
    for (const auto& list : c.per_job) {
      REQUIRE(list.size() == 1);
      CHECK(list[0].deadline == 5);
      CHECK(list[0].cost == 0);
    }
  }
  SUBCASE("drop to zero") {
    Instance inst;
    inst.machines = 1;
    for (int j = 0; j < 100; ++j) inst.jobs.push_back({"j" + std::to_string(j), 1, {{{0, 1}}}});
    const auto c = preprocess(inst, 100);
    REQUIRE(c.per_job[0].size() == 1);
    CHECK(c.per_job[0][0].deadline == 100);
    CHECK(c.per_job[0][0].cost == 0);
  }
  SUBCASE("positive at time 0 gets a zero-cost sentinel") {
    Instance inst = make(1, {2});
    inst.jobs[0].cost = {{{0, 3}, {1, 5}}};
    const auto c = preprocess(inst, 1);
    REQUIRE(c.per_job[0].size() == 2);
    CHECK(c.per_job[0][0].deadline == 0);
    CHECK(c.per_job[0][0].cost == 0);
    CHECK(c.per_job[0][1].deadline == 2);
    CHECK(c.per_job[0][1].cost == 8);
  }
  SUBCASE("geometric levels") {
    Instance inst = make(1, {20});
    inst.jobs[0].cost = {{{0, 0}, {2, 3}, {4, 4}, {6, 5}, {9, 9}, {12, 30}}};
    const auto c = preprocess(inst, Rational(1, 2));
    const auto& list = c.per_job[0];
    // levels 4 (3, 4), 8 (5), 16 (9), 32 (30)
    REQUIRE(list.size() == 5);
    CHECK(list[1].deadline == 5);
    CHECK(list[1].cost == 4);
    CHECK(list[2].deadline == 8);
    CHECK(list[3].deadline == 11);
    CHECK(list[4].deadline == 20);
    for (size_t i = 2; i < list.size(); ++i) CHECK(list[i].cost >= 2 * list[i - 1].cost);
  }
  CHECK_THROWS_AS(preprocess(make(1, {1}), 0), InputError);
}

TEST_CASE("check_feasible") {
  const Instance two = make(1, {2, 2});
  CHECK(check_feasible({2, 4}, two));
  CHECK_FALSE(check_feasible({2, 2}, two));
  CHECK(feasibility_slack({2, 2}, two, 1) == -1);
  CHECK(feasibility_slack({2, 4}, two, 1) == 0);

  Instance wide = make(3, {2, 5, 1, 4});
  CHECK(check_feasible({12, 12, 12, 12}, wide));
  CHECK_THROWS_AS(check_feasible({13, 12, 12, 12}, wide), InputError);
  CHECK_THROWS_AS(check_feasible({-1, 12, 12, 12}, wide), InputError);
}

TEST_CASE("max_flow_feasible") {
  const Instance two = make(1, {2, 2});
  auto flow = max_flow_feasible({2, 4}, two);
  CHECK(flow.feasible);
  CHECK(flow.value == 4);
  flow = max_flow_feasible({2, 2}, two);
  CHECK_FALSE(flow.feasible);
  CHECK(flow.value == 2);
  flow = max_flow_feasible({3, 3, 3}, make(2, {2, 2, 2}));
  CHECK(flow.feasible);
  CHECK(flow.value == 6);
  CHECK_THROWS_AS(max_flow_feasible({4}, make(1, {4}), 3), InputError);
}

TEST_CASE("extract_schedule") {
  SUBCASE("single job") {
    const Instance one = make(1, {3});
    const auto s = extract_schedule({3}, one);
    CHECK(s.slots == 3);
    for (int t = 0; t < 3; ++t) CHECK(s.cells[t][0] == 0);
    CHECK(s.completion(0) == 3);
    CHECK(verify_schedule(s, one, {3}).empty());
    CHECK(schedule_to_json(s, one).find("\"j1\"") != std::string::npos);
  }
  SUBCASE("three jobs on two machines") {
    const Instance inst = make(2, {2, 2, 2});
    const auto s = extract_schedule({3, 3, 3}, inst);
    CHECK(verify_schedule(s, inst, {3, 3, 3}).empty());
  }
  SUBCASE("infeasible") { CHECK_THROWS_AS(extract_schedule({2, 2}, make(1, {2, 2})), StageError); }
  SUBCASE("verifier catches violations") {
    const Instance inst = make(1, {2, 2});
    auto s = extract_schedule({2, 4}, inst);
    s.cells[0][0] = 1;  // job 2 now runs three slots, job 1 one
    CHECK_FALSE(verify_schedule(s, inst, {2, 4}).empty());
  }
}

TEST_CASE("brute_force_gsp") {
  Instance inst = make(1, {1, 1});
  inst.jobs[0].cost = {{{0, 0}, {2, 5}}};
  inst.jobs[1].cost = {{{0, 0}, {2, 1}}};
  auto best = brute_force_gsp(inst, exact_grid(inst));
  CHECK(best.cost == 1);
  CHECK(best.deadlines == Deadlines{1, 2});

  const Instance zero = make(1, {4});
  CHECK(brute_force_gsp(zero, exact_grid(zero)).cost == 0);

  // m >= n: every job meets p_j, per-job minimum
  Instance many = make(3, {2, 1, 3});
  many.jobs[0].cost = {{{0, 0}, {3, 4}}};
  many.jobs[1].cost = {{{0, 2}, {2, 6}}};
  many.jobs[2].cost = {{{0, 1}, {3, 2}, {4, 9}}};
  best = brute_force_gsp(many, exact_grid(many));
  CHECK(best.cost == many.jobs[0].cost.at(2) + many.jobs[1].cost.at(1) + many.jobs[2].cost.at(3));

  CHECK_THROWS_AS(brute_force_gsp(many, exact_grid(many), 1), InputError);
  CHECK(deadline_cost({2, 1, 3}, many) == 4);
}
