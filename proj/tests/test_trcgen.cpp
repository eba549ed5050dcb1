#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>

#include "capcover/gsp.hpp"
#include "capcover/trcgen.hpp"

using namespace capcover;
using namespace capcover::trcgen;

namespace {

Trapezoid trap(long p, long prev, long c, int index = 1) { return {0, "j", index, p, prev, c, index == 0 ? 0 : 4}; }

// Sum of the split pieces at b equals the trapezoid at b, for every b in [0, span].
void check_split(const Trapezoid& t, long span) {
  const auto pieces = split_trapezoid(t);
  CHECK(pieces.size() <= 3);
  for (long b = 0; b <= span; ++b) {
    Rational sum = 0;
    for (const auto& piece : pieces) sum += piece.capacity(b);
    INFO("b = " << b);
    CHECK(sum == t.value(b));
  }
  for (const auto& piece : pieces) {
    CHECK(piece.cost == t.cost);
    REQUIRE(piece.prov);
    CHECK(piece.prov->index == t.index);
    CHECK(piece.peak() > 0);
  }
}

gsp::Instance make(int machines, std::vector<long> sizes) {
  gsp::Instance inst;
  inst.machines = machines;
  for (size_t j = 0; j < sizes.size(); ++j) inst.jobs.push_back({"j" + std::to_string(j + 1), sizes[j], {{{0, 0}}}});
  return inst;
}

}  // namespace

TEST_CASE("wedge_value") {
  CHECK(wedge_value(3, 5, 0) == 3);
  CHECK(wedge_value(3, 5, 4) == 1);
  CHECK(wedge_value(3, 5, 6) == 0);
  CHECK(wedge_value(3, 5, 5) == 0);
}

TEST_CASE("trapezoid values") {
  const Trapezoid t = trap(2, 3, 6);
  CHECK(t.value(2) == 1);
  CHECK(t.value(4) == 2);
  CHECK(t.value(6) == 0);
  const Trapezoid t0 = trap(2, -1, 3, 0);
  CHECK(t0.value(0) + t.value(0) == wedge_value(2, 6, 0));
  CHECK(t0.value(0) == 2);
}

TEST_CASE("build_trapezoids") {
  gsp::Instance inst = make(1, {2, 4});
  inst.jobs[0].cost = {{{0, 0}, {4, 3}}};
  const auto candidates = gsp::preprocess(inst, 1);
  const auto traps = build_trapezoids(inst, candidates);
  // job 1: c_0 = 3, c_1 = 6; job 2: c_0 = 6
  REQUIRE(traps.size() == 3);
  CHECK(traps[0].deadline == 3);
  CHECK(traps[0].cost == 0);
  CHECK(traps[1].prev_deadline == 3);
  CHECK(traps[1].deadline == 6);
  CHECK(traps[1].cost == 4);
  CHECK(traps[2].index == 0);
  CHECK(traps[2].value(0) == 4);
}

TEST_CASE("split_trapezoid") {
  SUBCASE("p = 2, c = 3 -> 6") {
    const Trapezoid t = trap(2, 3, 6);
    check_split(t, 10);
    const auto pieces = split_trapezoid(t);
    REQUIRE(pieces.size() == 3);
    CHECK(pieces[0].kind() == "tri");
    CHECK(pieces[1].kind() == "rect");
    CHECK(pieces[1].peak() == 2);
    CHECK(pieces[2].kind() == "tri");
  }
  SUBCASE("p = 1, c = 2 -> 5") {
    const Trapezoid t = trap(1, 2, 5);
    check_split(t, 8);
    const auto pieces = split_trapezoid(t);
    REQUIRE(pieces.size() == 1);  // triangles of height p - 1 = 0 are empty
    CHECK(pieces[0].kind() == "rect");
    CHECK(pieces[0].left() == 2);
    CHECK(pieces[0].right() == 4);
  }
  SUBCASE("index 0 with c_0 >= p") { check_split(trap(3, -1, 7, 0), 10); }
  SUBCASE("index 0 with c_0 < p") { check_split(trap(5, -1, 3, 0), 10); }
  SUBCASE("short gap") {
    check_split(trap(5, 4, 6), 12);
    check_split(trap(5, 2, 4), 12);  // rising part starts left of 0
    check_split(trap(4, 0, 1), 6);
  }
  SUBCASE("empty") { CHECK(split_trapezoid(trap(2, -1, 0, 0)).empty()); }
  SUBCASE("exhaustive small") {
    for (long p = 1; p <= 5; ++p) {
      for (long c = 0; c <= 8; ++c) {
        check_split(trap(p, -1, c, 0), 12);
        for (long c2 = c + 1; c2 <= 10; ++c2) check_split(trap(p, c, c2), 12);
      }
    }
  }
}

TEST_CASE("trapezoid_profile is exact on reals") {
  const Trapezoid t = trap(3, 2, 7);
  const Profile pwl = trapezoid_profile(t);
  for (long b = 0; b <= 9; ++b) CHECK(pwl.capacity(b) == t.value(b));
  CHECK(pwl.capacity(Rational(9, 2)) == Rational(5, 2));
}

TEST_CASE("reduce_points") {
  const std::vector<Profile> two = {make_rect("a", 1, 3, 1, 1), make_rect("b", 2, 5, 1, 1)};
  CHECK(reduce_points(7, two) == std::vector<long>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(reduce_points(20, two) == std::vector<long>{0, 1, 2, 3, 4, 5, 6, 20});
  CHECK(reduce_points(5, {}) == std::vector<long>{0, 5});
  CHECK(reduce_points(9, {make_rect("a", 0, 9, 1, 1)}) == std::vector<long>{0, 9});
  const auto many = reduce_points(40, {make_rect("a", 3, 30, 1, 1), make_triangle("t", 10, 20, Slope::kRise, 1)});
  CHECK(many.size() <= 2 * (2 * 2 + 1));
}

TEST_CASE("build_trc demands") {
  SUBCASE("m = 2, p = (3, 4)") {
    const auto inst = make(2, {3, 4});
    CHECK(demand_at(inst, 0) == 7);
    CHECK(demand_at(inst, 1) == 5);
    CHECK(demand_at(inst, 3) == 1);
    CHECK(demand_at(inst, 4) <= 0);
    const auto trc = build_trc(inst, gsp::preprocess(inst, 1));
    for (const auto& pt : trc.points) {
      CHECK(pt.demand > 0);
      CHECK(pt.demand == demand_at(inst, pt.x.get_num().get_si()));
    }
  }
  SUBCASE("m >= sum p") {
    const auto inst = make(5, {2, 3});
    const auto trc = build_trc(inst, gsp::preprocess(inst, 1));
    REQUIRE(trc.points.size() == 1);
    CHECK(trc.points[0].x == 0);
  }
  SUBCASE("m = 1, p = (2, 2)") {
    const auto inst = make(1, {2, 2});
    CHECK(demand_at(inst, 0) == 4);
    CHECK(demand_at(inst, 1) == 3);
    CHECK(demand_at(inst, 2) == 2);
    CHECK(demand_at(inst, 3) == 1);
    const auto full = build_trapezoid_cover(inst, gsp::preprocess(inst, 1));
    CHECK(full.points.size() == 4);
  }
}

TEST_CASE("cover_to_deadlines") {
  gsp::Instance inst = make(1, {2, 2});
  inst.jobs[0].cost = {{{0, 0}, {2, 1}, {3, 4}}};
  inst.jobs[1].cost = {{{0, 0}, {3, 1}}};
  const auto candidates = gsp::preprocess(inst, Rational(1, 4));
  const auto trc = build_trc(inst, candidates);
  // job 1 candidates: 1, 2, 4 -- job 2: 2, 4
  REQUIRE(candidates.per_job[0].size() == 3);

  auto pieces_of = [&](const std::string& job, int index) {
    std::vector<size_t> out;
    for (size_t z = 0; z < trc.profiles.size(); ++z) {
      if (trc.profiles[z].prov->job == job && trc.profiles[z].prov->index == index) out.push_back(z);
    }
    return out;
  };
  std::vector<size_t> selection = pieces_of("j1", 0);
  for (size_t z : pieces_of("j1", 2)) selection.push_back(z);
  auto deadlines = cover_to_deadlines(trc, selection, inst, candidates);
  CHECK(deadlines[0] == 4);
  CHECK(deadlines[1] == candidates.per_job[1][0].deadline);

  std::vector<size_t> everything(trc.profiles.size());
  for (size_t z = 0; z < everything.size(); ++z) everything[z] = z;
  deadlines = cover_to_deadlines(trc, everything, inst, candidates);
  CHECK(deadlines[0] == 4);
  CHECK(deadlines[1] == 4);
  CHECK(verify_capcover(trc, everything));
  CHECK(gsp::check_feasible(deadlines, inst));
}
