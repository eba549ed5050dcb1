#include "capcover/lift.hpp"

#include <algorithm>
#include <set>

#include "capcover/errors.hpp"

namespace capcover::lift {

std::optional<int> profile_class(const Rational& capacity, const Rational& residual_demand) {
  if (residual_demand <= 0) throw InputError("profile_class needs a positive residual demand");
  const long j_max = std::max(0L, floor_log2(residual_demand));
  Rational threshold = residual_demand;
  for (long j = 0; j <= j_max; ++j) {
    if (capacity >= threshold) return static_cast<int>(j);
    threshold /= 2;
  }
  return std::nullopt;
}

LiftedInstance build_lifted(const CapCoverInstance& inst, const kclp::ResidualInstance& res) {
  LiftedInstance lifted;
  for (size_t k = 0; k < res.residual_profiles.size(); ++k) {
    const size_t z = res.residual_profiles[k];
    lifted.sets.push_back({z, inst.profiles[z].id, inst.profiles[z].cost, res.scaled_x[k], {}});
  }

  for (size_t p = 0; p < inst.points.size(); ++p) {
    const Rational& d = res.residual_demand[p];
    if (d <= 0) continue;
    const long j_max = std::max(0L, floor_log2(d));

    std::vector<std::optional<int>> cls(lifted.sets.size());
    bool any = false;
    for (size_t k = 0; k < lifted.sets.size(); ++k) {
      cls[k] = profile_class(inst.capacity(lifted.sets[k].profile, p), d);
      any = any || cls[k].has_value();
    }
    if (!any) {
      lifted.unclassified_points.push_back(p);
      continue;
    }

    Rational height = d;
    for (long j = 0; j <= j_max; ++j, height /= 2) {
      Rational mass = 0;
      std::vector<size_t> members;
      for (size_t k = 0; k < lifted.sets.size(); ++k) {
        if (cls[k] && *cls[k] <= j) {
          mass += lifted.sets[k].x;
          members.push_back(k);
        }
      }
      const long requirement = floor(mass).get_num().get_si();
      if (requirement <= 0) continue;
      const size_t e = lifted.elements.size();
      for (size_t k : members) lifted.sets[k].elements.push_back(e);
      lifted.elements.push_back({p, static_cast<int>(j), height, requirement, std::move(members)});
    }
  }
  return lifted;
}

InducedSolution induced_fractional(const LiftedInstance& lifted) {
  InducedSolution out;
  out.objective = 0;
  for (const auto& set : lifted.sets) {
    out.x.push_back(set.x);
    out.objective += set.cost * set.x;
  }
  std::string violations;
  for (size_t e = 0; e < lifted.elements.size(); ++e) {
    const auto& element = lifted.elements[e];
    Rational covered = 0;
    for (size_t k : element.members) covered += out.x[k];
    if (covered < element.requirement) {
      violations += " q(" + std::to_string(element.point) + "," + std::to_string(element.level) + "): " +
                    to_string(covered) + " < " + std::to_string(element.requirement) + ";";
    }
  }
  if (!violations.empty()) throw VerificationError("induced fractional solution under-covers:" + violations);
  return out;
}

MapBack map_back(const LiftedInstance& lifted, const std::vector<size_t>& selection, const CapCoverInstance& inst,
                 const kclp::ResidualInstance& res) {
  std::set<size_t> chosen;
  for (size_t k : selection) {
    if (k >= lifted.sets.size()) throw InputError("lifted cover references unknown set " + std::to_string(k));
    if (!chosen.insert(k).second) throw InputError("lifted cover selects set " + std::to_string(k) + " twice");
  }
  for (const auto& element : lifted.elements) {
    long hits = 0;
    for (size_t k : element.members) hits += chosen.count(k);
    if (hits < element.requirement)
      throw InputError("infeasible lifted cover: q(" + std::to_string(element.point) + "," +
                       std::to_string(element.level) + ") covered " + std::to_string(hits) + " < " +
                       std::to_string(element.requirement));
  }

  MapBack out;
  for (size_t k : chosen) out.profiles.push_back(lifted.sets[k].profile);
  std::sort(out.profiles.begin(), out.profiles.end());
  for (size_t p = 0; p < inst.points.size(); ++p) {
    Rational total = 0;
    for (size_t z : out.profiles) total += inst.capacity(z, p);
    if (total < res.residual_demand[p]) out.failing_points.push_back(p);
  }
  out.verdict = out.failing_points.empty();
  return out;
}

FinalCover compose_final(const CapCoverInstance& inst, const kclp::FractionalSolution& fractional,
                         const kclp::ResidualInstance& res, const InducedSolution& induced,
                         const Rational& lifted_lp_value, const MapBack& mapped) {
  FinalCover out;
  std::set<size_t> selection(res.heavy.begin(), res.heavy.end());
  selection.insert(mapped.profiles.begin(), mapped.profiles.end());
  out.selection.assign(selection.begin(), selection.end());

  CostLedger& ledger = out.ledger;
  ledger.w_star = fractional.objective;
  ledger.heavy_cost = 0;
  for (size_t z : res.heavy) ledger.heavy_cost += inst.profiles[z].cost;
  ledger.rounded_cost = 0;
  for (size_t z : mapped.profiles) ledger.rounded_cost += inst.profiles[z].cost;
  ledger.induced_value = induced.objective;
  ledger.lifted_lp_value = min(max(lifted_lp_value, Rational(0)), induced.objective);
  if (ledger.lifted_lp_value > 0) {
    ledger.gamma = ledger.rounded_cost / ledger.lifted_lp_value;
  } else {
    ledger.gamma = 1;
  }
  ledger.total = ledger.heavy_cost + ledger.rounded_cost;
  ledger.bound = (ledger.gamma + 1) * res.beta * ledger.w_star;
  ledger.within_bound = ledger.total <= ledger.bound;
  return out;
}

}  // namespace capcover::lift
