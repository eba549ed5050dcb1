#include "capcover/random_instances.hpp"

#include <algorithm>

namespace capcover::random {

gsp::Instance random_gsp(Rng& rng, const GspShape& shape) {
  gsp::Instance inst;
  inst.machines = static_cast<int>(uniform(rng, 1, shape.max_machines));
  const long n = uniform(rng, 1, shape.max_jobs);
  for (long j = 0; j < n; ++j) {
    gsp::Job job;
    job.id = "j" + std::to_string(j + 1);
    job.size = uniform(rng, 1, shape.max_size);
    inst.jobs.push_back(std::move(job));
  }
  const long v = inst.horizon();
  for (auto& job : inst.jobs) {
    long value = uniform(rng, 0, 2) == 0 ? uniform(rng, 1, shape.max_step) : 0;
    job.cost.breakpoints.emplace_back(0, value);
    long t = 0;
    const long steps = uniform(rng, 0, shape.max_cost_steps);
    for (long s = 0; s < steps; ++s) {
      t += uniform(rng, 1, std::max(1L, v / 2 + 1));
      value += uniform(rng, 1, shape.max_step);
      job.cost.breakpoints.emplace_back(t, value);
    }
  }
  return inst;
}

namespace {

Profile random_piece(Rng& rng, size_t index) {
  const std::string id = "z" + std::to_string(index + 1);
  const long a = uniform(rng, 0, 18);
  const long b = a + uniform(rng, 1, 12);
  const Rational cost = uniform(rng, 0, 9) == 0 ? 0 : uniform(rng, 1, 12);
  switch (uniform(rng, 0, 2)) {
    case 0:
      return make_rect(id, a, b, uniform(rng, 1, 10), cost);
    case 1:
      return make_triangle(id, a, b, Slope::kRise, cost);
    default:
      return make_triangle(id, a, b, Slope::kFall, cost);
  }
}

}  // namespace

CapCoverInstance random_capcover(Rng& rng, int max_points, int max_profiles) {
  CapCoverInstance inst;
  const long n_profiles = uniform(rng, 1, max_profiles);
  for (long z = 0; z < n_profiles; ++z) inst.profiles.push_back(random_piece(rng, static_cast<size_t>(z)));

  const long n_points = uniform(rng, 1, max_points);
  for (long k = 0; k < n_points * 4 && static_cast<long>(inst.points.size()) < n_points; ++k) {
    const long x = uniform(rng, 0, 20);
    if (std::any_of(inst.points.begin(), inst.points.end(), [&](const DemandPoint& p) { return p.x == x; })) continue;
    Rational total = 0;
    for (const auto& profile : inst.profiles) total += profile.capacity(x);
    if (total <= 0) continue;
    // demand in (0, total], biased towards needing several profiles
    const long num = uniform(rng, 1, 8);
    inst.points.push_back({x, total * num / 8});
  }
  if (inst.points.empty()) {
    const Rational x = inst.profiles.front().left() + 1;
    inst.points.push_back({x, inst.profiles.front().capacity(x) > 0 ? inst.profiles.front().capacity(x) : Rational(1)});
    if (inst.profiles.front().capacity(x) <= 0) inst.profiles.push_back(make_rect("z0", x, x, 1, 1));
  }
  return inst;
}

CapCoverInstance random_knapsack(Rng& rng, int max_items) {
  CapCoverInstance inst;
  const long items = uniform(rng, 1, max_items);
  Rational total = 0;
  for (long i = 0; i < items; ++i) {
    const long size = uniform(rng, 1, 20);
    const long cost = uniform(rng, 0, 5) == 0 ? 0 : uniform(rng, 1, 20);
    inst.profiles.push_back(make_rect("i" + std::to_string(i + 1), 0, 0, size, cost));
    total += size;
  }
  inst.points.push_back({0, uniform(rng, 1, total.get_num().get_si())});
  return inst;
}

std::vector<Profile> random_rectangles(Rng& rng, int t) {
  std::vector<Profile> out;
  for (int k = 0; k < t; ++k) {
    const long a = uniform(rng, 0, 90);
    const long b = a + uniform(rng, 1, 40);
    out.push_back(make_rect("r" + std::to_string(k), a, b, uniform(rng, 1, 30), 1));
  }
  return out;
}

std::vector<Profile> random_triangles(Rng& rng, int t, Slope dir) {
  std::vector<Profile> out;
  for (int k = 0; k < t; ++k) {
    const long a = uniform(rng, 0, 90);
    const long b = a + uniform(rng, 1, 40);
    out.push_back(make_triangle("t" + std::to_string(k), a, b, dir, 1));
  }
  return out;
}

}  // namespace capcover::random
