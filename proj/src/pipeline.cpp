#include "capcover/pipeline.hpp"

#include <sstream>

#include <json.hpp>

#include "capcover/errors.hpp"
#include "capcover/json_util.hpp"

namespace capcover::pipeline {

using nlohmann::json;

std::optional<bool> Ledger::headline_ok() const {
  if (!oracle_opt) return std::nullopt;
  return final_cost <= Rational(108) * cover.gamma * *oracle_opt;
}

Rational initial_guess(const gsp::Instance& inst) {
  std::optional<Rational> smallest;
  for (const auto& job : inst.jobs) {
    for (const auto& [t, value] : job.cost.breakpoints) {
      if (value > 0 && (!smallest || value < *smallest)) smallest = value;
    }
  }
  return smallest ? Rational(*smallest / 2) : Rational(1);
}

namespace {

const char* rounding_name(geomcover::Rounding mode, size_t sets) {
  switch (mode) {
    case geomcover::Rounding::kGreedy:
      return "greedy";
    case geomcover::Rounding::kExact:
      return "exact";
    case geomcover::Rounding::kAuto:
      return sets <= geomcover::kDefaultExactCap ? "auto:exact" : "auto:greedy";
  }
  return "greedy";
}

}  // namespace

Result run_once(const gsp::Instance& inst, const Rational& opt_guess, const Options& options) {
  Result result;
  Ledger& ledger = result.ledger;
  ledger.opt_guess = opt_guess;
  ledger.beta = options.beta;

  result.candidates = gsp::preprocess(inst, opt_guess);
  result.trc = trcgen::build_trc(inst, result.candidates);
  ledger.trc_points = result.trc.points.size();
  ledger.trc_profiles = result.trc.profiles.size();

  kclp::Options lp_options;
  lp_options.beta = options.beta;
  lp_options.tol = options.tol;
  lp_options.max_rounds = options.max_cut_rounds;
  const auto fractional = kclp::solve_kc_lp(result.trc, lp_options);
  ledger.kc_cuts = fractional.cuts.size();
  ledger.cut_rounds = fractional.rounds;

  const auto residual = kclp::select_heavy(result.trc, fractional.x, options.beta);
  ledger.beta_cover_ok = kclp::verify_beta_cover(result.trc, residual, options.tol);
  if (!ledger.beta_cover_ok) throw VerificationError("residual solution misses the beta-cover inequality");

  const auto lifted = lift::build_lifted(result.trc, residual);
  if (!lifted.unclassified_points.empty())
    throw VerificationError("point " + std::to_string(lifted.unclassified_points.front()) +
                            " has residual demand but no classified profile");
  ledger.lifted_elements = lifted.elements.size();
  ledger.lifted_sets = lifted.sets.size();
  const auto induced = lift::induced_fractional(lifted);  // throws if a lifted requirement is not met by x
  ledger.claim1_ok = true;

  const auto setcover = geomcover::from_lifted(lifted);
  const auto lp_value = geomcover::setcover_lp(setcover);
  const auto cover = geomcover::round_cover(setcover, options.rounding);
  ledger.rounding = rounding_name(options.rounding, setcover.sets.size());

  const auto mapped = lift::map_back(lifted, cover.sets, result.trc, residual);
  ledger.claim2_ok = mapped.verdict;
  if (!mapped.verdict && options.beta >= 8)
    throw VerificationError("lifted cover maps back short of residual demand at point " +
                            std::to_string(mapped.failing_points.front()));

  const auto final_cover = lift::compose_final(result.trc, fractional, residual, induced, lp_value.value, mapped);
  ledger.cover = final_cover.ledger;
  if (!verify_capcover(result.trc, final_cover.selection))
    throw VerificationError("composed cover does not satisfy the TRC demands");

  result.deadlines = trcgen::cover_to_deadlines(result.trc, final_cover.selection, inst, result.candidates);
  ledger.deadlines_feasible = gsp::check_feasible(result.deadlines, inst);
  if (!ledger.deadlines_feasible) throw VerificationError("deadlines read off the cover are infeasible");
  ledger.final_cost = gsp::deadline_cost(result.deadlines, inst);
  ledger.rounded_deadline_cost = 0;
  for (size_t j = 0; j < inst.jobs.size(); ++j) {
    for (const auto& c : result.candidates.per_job[j]) {
      if (c.deadline == result.deadlines[j]) ledger.rounded_deadline_cost += c.cost;
    }
  }

  if (inst.horizon() <= options.flow_horizon_cap) {
    result.schedule = gsp::extract_schedule(result.deadlines, inst, options.flow_horizon_cap);
    ledger.schedule_extracted = true;
    auto problems = gsp::verify_schedule(*result.schedule, inst, result.deadlines);
    ledger.schedule_ok = problems.empty();
    if (!problems.empty()) throw VerificationError("extracted schedule is invalid: " + problems.front());
  }
  return result;
}

Result run_pipeline(const gsp::Instance& inst, const Options& options) {
  gsp::validate(inst);
  std::vector<Rational> tried;
  std::optional<Result> best;

  auto consider = [&](Result r) {
    if (!best || r.ledger.final_cost < best->ledger.final_cost) best = std::move(r);
  };

  if (options.opt_guess) {
    tried.push_back(*options.opt_guess);
    consider(run_once(inst, *options.opt_guess, options));
  } else {
    Rational ceiling = 0;
    for (const auto& job : inst.jobs) ceiling += job.cost.max_value();
    ceiling *= 2;
    for (Rational guess = initial_guess(inst);; guess *= 2) {
      tried.push_back(guess);
      Result r = run_once(inst, guess, options);
      const bool accepted = r.ledger.final_cost <= options.guess_factor * guess;
      consider(std::move(r));
      if (accepted || guess >= ceiling) break;
    }
  }

  Result out = std::move(*best);
  out.ledger.guesses_tried = std::move(tried);
  if (options.run_oracle && out.candidates.grid_size(options.oracle_cap) <= options.oracle_cap) {
    out.ledger.oracle_opt = gsp::brute_force_gsp(inst, out.candidates, options.oracle_cap).cost;
  }
  return out;
}

std::string to_json(const Ledger& ledger) {
  json doc;
  doc["opt_guess"] = rational_report(ledger.opt_guess);
  doc["guesses_tried"] = json::array();
  for (const auto& g : ledger.guesses_tried) doc["guesses_tried"].push_back(to_string(g));
  doc["trc"] = {{"points", ledger.trc_points}, {"profiles", ledger.trc_profiles}};
  doc["kc_lp"] = {{"cuts", ledger.kc_cuts}, {"rounds", ledger.cut_rounds}, {"w_star", rational_report(ledger.cover.w_star)}};
  doc["beta"] = rational_report(ledger.beta);
  doc["heavy_cost"] = rational_report(ledger.cover.heavy_cost);
  doc["lifted"] = {{"elements", ledger.lifted_elements},
                   {"sets", ledger.lifted_sets},
                   {"lp_value", rational_report(ledger.cover.lifted_lp_value)},
                   {"induced_value", rational_report(ledger.cover.induced_value)}};
  doc["rounding"] = ledger.rounding;
  doc["rounded_cost"] = rational_report(ledger.cover.rounded_cost);
  doc["gamma"] = rational_report(ledger.cover.gamma);
  doc["cover_total"] = rational_report(ledger.cover.total);
  doc["cover_bound"] = rational_report(ledger.cover.bound);
  doc["final_cost"] = rational_report(ledger.final_cost);
  doc["rounded_deadline_cost"] = rational_report(ledger.rounded_deadline_cost);
  if (ledger.oracle_opt) {
    doc["oracle_opt"] = rational_report(*ledger.oracle_opt);
    if (*ledger.oracle_opt > 0) doc["ratio"] = rational_report(ledger.final_cost / *ledger.oracle_opt);
    doc["headline_bound"] = rational_report(Rational(108) * ledger.cover.gamma * *ledger.oracle_opt);
  }
  doc["checks"] = {{"beta_cover", ledger.beta_cover_ok},
                   {"claim1", ledger.claim1_ok},
                   {"claim2", ledger.claim2_ok},
                   {"cover_within_bound", ledger.cover.within_bound},
                   {"deadlines_feasible", ledger.deadlines_feasible},
                   {"schedule_extracted", ledger.schedule_extracted},
                   {"schedule_ok", ledger.schedule_ok}};
  if (auto ok = ledger.headline_ok()) doc["checks"]["headline"] = *ok;
  return doc.dump(2);
}

std::string to_text(const Ledger& ledger) {
  std::ostringstream out;
  auto line = [&](const std::string& name, const Rational& value) {
    out << name << ": " << to_string(value) << " (" << to_decimal(value, 6) << ")\n";
  };
  line("opt_guess", ledger.opt_guess);
  out << "trc: " << ledger.trc_points << " points, " << ledger.trc_profiles << " profiles\n";
  out << "kc lp: " << ledger.kc_cuts << " cuts in " << ledger.cut_rounds << " rounds\n";
  line("w*", ledger.cover.w_star);
  line("heavy cost", ledger.cover.heavy_cost);
  out << "lifted: " << ledger.lifted_elements << " elements, " << ledger.lifted_sets << " sets\n";
  line("lifted lp value", ledger.cover.lifted_lp_value);
  line("rounded cost (" + ledger.rounding + ")", ledger.cover.rounded_cost);
  line("gamma", ledger.cover.gamma);
  line("cover total", ledger.cover.total);
  line("(gamma+1) beta w*", ledger.cover.bound);
  line("final cost", ledger.final_cost);
  if (ledger.oracle_opt) line("oracle opt", *ledger.oracle_opt);
  out << "checks: beta_cover=" << ledger.beta_cover_ok << " claim1=" << ledger.claim1_ok
      << " claim2=" << ledger.claim2_ok << " bound=" << ledger.cover.within_bound
      << " feasible=" << ledger.deadlines_feasible << " schedule=" << ledger.schedule_ok;
  if (auto ok = ledger.headline_ok()) out << " headline=" << *ok;
  out << "\n";
  return out.str();
}

}  // namespace capcover::pipeline
