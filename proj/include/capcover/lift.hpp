#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capcover/kclp.hpp"
#include "capcover/rational.hpp"

namespace capcover::lift {

/// Smallest j in [0, j_max] with capacity >= 2^-j d', j_max = max(0, floor(log2 d')); nullopt if none.
/// Throws InputError if d' <= 0.
std::optional<int> profile_class(const Rational& capacity, const Rational& residual_demand);

/// Uncapacitated multi-cover instance over lifted points q_{p,j} = (p, 2^-j d'_p).
struct LiftedInstance {
  struct Element {
    size_t point = 0;
    int level = 0;
    Rational height;        // 2^-j d'_p
    long requirement = 0;   // m_{p,j} = floor(sum_{cl(z,p) <= j} x'_z), always >= 1 here
    std::vector<size_t> members;  // lifted sets containing this element
  };
  struct Set {
    size_t profile = 0;  // index into the capacitated instance
    std::string id;
    Rational cost;
    Rational x;          // x'_z
    std::vector<size_t> elements;
  };

  std::vector<Element> elements;
  std::vector<Set> sets;  // aligned with ResidualInstance::residual_profiles
  /// Points with d'_p > 0 where no residual profile has a class.
  std::vector<size_t> unclassified_points;
};

LiftedInstance build_lifted(const CapCoverInstance& inst, const kclp::ResidualInstance& res);

struct InducedSolution {
  std::vector<Rational> x;  // x~ per lifted set
  Rational objective;
};

/// x~_z = x'_z; checks every element is fractionally covered to its requirement.
/// Throws VerificationError listing violations (an upstream bug).
InducedSolution induced_fractional(const LiftedInstance& lifted);

struct MapBack {
  std::vector<size_t> profiles;  // S', indices into the capacitated instance
  bool verdict = false;          // S' meets every residual demand
  std::vector<size_t> failing_points;
};

/// `selection` lists lifted set indices. Throws InputError unless it is a feasible multi-cover.
MapBack map_back(const LiftedInstance& lifted, const std::vector<size_t>& selection, const CapCoverInstance& inst,
                 const kclp::ResidualInstance& res);

struct CostLedger {
  Rational w_star;            // KC LP value
  Rational heavy_cost;        // cost of S
  Rational lifted_lp_value;   // basic set cover LP optimum on the lifted instance
  Rational induced_value;     // w(x~)
  Rational rounded_cost;      // cost of the integral lifted cover
  Rational gamma;             // rounded_cost / lifted_lp_value (1 when both are 0)
  Rational total;             // cost of S u S'
  Rational bound;             // (gamma + 1) beta w*
  bool within_bound = false;
};

struct FinalCover {
  std::vector<size_t> selection;  // S u S', ascending
  CostLedger ledger;
};

/// Joins S and S' and fills the cost ledger. `lifted_lp_value` is clipped to w(x~).
FinalCover compose_final(const CapCoverInstance& inst, const kclp::FractionalSolution& fractional,
                         const kclp::ResidualInstance& res, const InducedSolution& induced,
                         const Rational& lifted_lp_value, const MapBack& mapped);

}  // namespace capcover::lift
