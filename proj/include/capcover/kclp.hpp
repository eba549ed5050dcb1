#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capcover/profile.hpp"
#include "capcover/rational.hpp"

namespace capcover {

struct DemandPoint {
  Rational x;
  Rational demand;
};

/// Demand points on the line covered by cost-weighted capacity profiles.
struct CapCoverInstance {
  std::vector<DemandPoint> points;
  std::vector<Profile> profiles;

  /// c_z(p) for profile z at point p.
  Rational capacity(size_t z, size_t p) const { return profiles[z].capacity(points[p].x); }
};

/// capacity_table[p][z] = c_z(p).
using CapacityTable = std::vector<std::vector<Rational>>;
CapacityTable capacity_table(const CapCoverInstance& inst);

void validate(const CapCoverInstance& inst);

/// CapCover JSON: {"points": [{"x", "demand"}], "profiles": [{"kind": "rect"|"tri"|"pwl", ...}]}.
CapCoverInstance parse_capcover(std::string_view document);
std::string to_json(const CapCoverInstance& inst);

/// True iff the multiset `selection` (profile indices) meets every demand, in exact arithmetic.
bool verify_capcover(const CapCoverInstance& inst, const std::vector<size_t>& selection);

/// Minimum-cost feasible subset by depth-first branch and bound. Oracle; throws InputError
/// above `max_profiles` profiles and StageError when even all profiles fall short.
struct ExactCapCover {
  std::vector<size_t> selection;
  Rational cost;
};
ExactCapCover exact_capcover(const CapCoverInstance& inst, size_t max_profiles = 24);

}  // namespace capcover

namespace capcover::kclp {

struct Options {
  Rational beta = 8;
  double tol = 1e-7;
  int max_rounds = 200;
  /// Also separate over every S at every point (exact KC LP value). Needs <= 20 profiles with
  /// positive capacity at each point.
  bool exhaustive = false;
};

/// One knapsack-cover inequality: sum_{z not in S} min(c_z(p), d_p - c_S(p)) x_z >= d_p - c_S(p).
struct KcCut {
  size_t point = 0;
  std::vector<size_t> heavy;  // S, sorted

  bool operator==(const KcCut&) const = default;
};

/// LHS - RHS of the KC inequality for (p, S) under x. Throws InputError when c_S(p) >= d_p.
Rational kc_constraint(const CapCoverInstance& inst, size_t p, const std::vector<size_t>& heavy,
                       const std::vector<Rational>& x);

struct FractionalSolution {
  /// Exact 12-digit snapshot of the LP values, clamped to [0, 1].
  std::vector<Rational> x;
  Rational objective;
  std::vector<KcCut> cuts;
  int rounds = 0;
  long pivots = 0;
  std::vector<std::string> warnings;
};

/// KC-strengthened LP by cutting planes. Starts from the clipped covering rows (S = {}) and
/// adds the cut (p, S(x)) with S(x) = {z : x_z >= 1/beta} for every violated point.
/// Throws StageError naming the first uncoverable point when the instance is infeasible.
FractionalSolution solve_kc_lp(const CapCoverInstance& inst, const Options& options = {});

/// Heavy sets taken integrally and the scaled residual fractional solution.
struct ResidualInstance {
  Rational beta;
  std::vector<size_t> heavy;                // S
  std::vector<size_t> residual_profiles;    // Z', ascending
  std::vector<Rational> residual_demand;    // d'_p per point
  std::vector<Rational> scaled_x;           // x'_z = beta x_z, aligned with residual_profiles
};

ResidualInstance select_heavy(const CapCoverInstance& inst, const std::vector<Rational>& x,
                              const Rational& beta = 8);

/// sum_{z in Z'} min(c_z(p), d'_p) x'_z >= beta d'_p (1 - tol) at every point with d'_p > 0.
bool verify_beta_cover(const CapCoverInstance& inst, const ResidualInstance& res, double tol = 1e-7);

}  // namespace capcover::kclp
