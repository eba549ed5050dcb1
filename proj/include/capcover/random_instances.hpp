#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "capcover/gsp.hpp"
#include "capcover/kclp.hpp"
#include "capcover/profile.hpp"

namespace capcover::random {

using Rng = std::mt19937_64;

struct GspShape {
  int max_jobs = 5;
  int max_machines = 3;
  long max_size = 6;
  int max_cost_steps = 3;  // positive steps after the value at time 0
  long max_step = 16;
};

gsp::Instance random_gsp(Rng& rng, const GspShape& shape = {});

/// Points at integers in [0, 20]; rect and slope-1 triangle profiles; every demand coverable.
CapCoverInstance random_capcover(Rng& rng, int max_points = 8, int max_profiles = 10);

/// One point at 0, items are rectangles over it.
CapCoverInstance random_knapsack(Rng& rng, int max_items = 10);

/// t rectangles on [0, 100] with integer corners, touching the axis.
std::vector<Profile> random_rectangles(Rng& rng, int t);

/// t slope-1 right triangles of one orientation with integer corners.
std::vector<Profile> random_triangles(Rng& rng, int t, Slope dir);

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace capcover::random
