#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capcover/kclp.hpp"

namespace capcover::suites {

/// Result of one seeded randomized check.
struct Outcome {
  std::string name;
  size_t trials = 0;
  size_t failures = 0;
  double seconds = 0;
  std::vector<std::string> notes;     // first few failures, then counters
  bool passed() const { return trials > 0 && failures == 0; }
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Points u = 2 (demand 1) and v = 5 (demand 7); z2 and z3 are rising triangles with
/// z2(u) = 2, z3(u) = 0, z2(v) = 5, z3(v) = 2; z1 is a unit rectangle over u. Unit costs.
CapCoverInstance two_point_instance();

Outcome two_point();
Outcome feasibility(std::uint64_t seed = kDefaultSeed, int count = 200);
Outcome lifting(std::uint64_t seed = kDefaultSeed, int count = 200, int random_covers = 50);
Outcome kc_gap(std::uint64_t seed = kDefaultSeed, int count = 200);
Outcome end_to_end(std::uint64_t seed = kDefaultSeed, int count = 100);
Outcome sandwich(std::uint64_t seed = kDefaultSeed, int count = 50);
Outcome envelope(std::uint64_t seed = kDefaultSeed, int count = 100, int samples = 1000);
Outcome point_reduction(std::uint64_t seed = kDefaultSeed, int count = 100, int selections = 20);

std::vector<Outcome> all(std::uint64_t seed = kDefaultSeed);

std::string format(const Outcome& outcome);

}  // namespace capcover::suites
