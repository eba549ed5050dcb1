#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capcover/geomcover.hpp"
#include "capcover/gsp.hpp"
#include "capcover/kclp.hpp"
#include "capcover/lift.hpp"
#include "capcover/trcgen.hpp"

namespace capcover::pipeline {

struct Options {
  Rational beta = 8;
  double tol = 1e-7;
  int max_cut_rounds = 200;
  geomcover::Rounding rounding = geomcover::Rounding::kAuto;
  /// Fixed opt guess; when absent a doubling ladder is searched.
  std::optional<Rational> opt_guess;
  /// Ladder stops at the first guess whose result costs <= guess_factor * guess.
  Rational guess_factor = 4;
  long flow_horizon_cap = gsp::kDefaultFlowHorizonCap;
  std::uint64_t oracle_cap = gsp::kDefaultOracleCap;
  bool run_oracle = true;
};

/// Every stage value of one run. Costs on the covering side use rounded costs; final_cost is
/// the sum of original f_j at the chosen deadlines.
struct Ledger {
  Rational opt_guess;
  std::vector<Rational> guesses_tried;
  size_t trc_points = 0;
  size_t trc_profiles = 0;
  size_t kc_cuts = 0;
  int cut_rounds = 0;
  size_t lifted_elements = 0;
  size_t lifted_sets = 0;
  std::string rounding;
  lift::CostLedger cover;
  Rational beta;
  Rational final_cost;
  Rational rounded_deadline_cost;
  std::optional<Rational> oracle_opt;
  bool beta_cover_ok = false;
  bool claim1_ok = false;
  bool claim2_ok = false;
  bool deadlines_feasible = false;
  bool schedule_ok = false;
  bool schedule_extracted = false;

  /// final_cost <= 108 * gamma * OPT when the oracle ran (12 from the trapezoid reduction, 9 from
  /// the lifting at beta = 8).
  std::optional<bool> headline_ok() const;
};

struct Result {
  Ledger ledger;
  gsp::CandidateDeadlines candidates;
  CapCoverInstance trc;
  gsp::Deadlines deadlines;
  std::optional<gsp::Schedule> schedule;
};

/// preprocess -> build_trc -> solve_kc_lp -> select_heavy -> build_lifted -> round -> map_back
/// -> compose_final -> cover_to_deadlines -> check_feasible -> extract_schedule.
/// Stage failures raise StageError; broken guarantees raise VerificationError.
Result run_pipeline(const gsp::Instance& inst, const Options& options = {});

/// One pass at a fixed guess, without the oracle.
Result run_once(const gsp::Instance& inst, const Rational& opt_guess, const Options& options);

/// Starting guess of the ladder: half the smallest positive cost value (1 when all costs are 0).
Rational initial_guess(const gsp::Instance& inst);

std::string to_json(const Ledger& ledger);
std::string to_text(const Ledger& ledger);

}  // namespace capcover::pipeline
