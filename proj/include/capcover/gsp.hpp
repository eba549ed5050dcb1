#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capcover/rational.hpp"

namespace capcover::gsp {

/// Non-decreasing step function on integer times: f(t) = value of the last breakpoint with time <= t.
struct StepCurve {
  std::vector<std::pair<long, Rational>> breakpoints;  // first at time 0

  Rational at(long t) const;
  Rational max_value() const { return breakpoints.empty() ? Rational(0) : breakpoints.back().second; }
};

struct Job {
  std::string id;
  long size = 1;
  StepCurve cost;
};

/// n jobs released at time 0 on `machines` identical machines, preemption and migration allowed.
struct Instance {
  int machines = 1;
  std::vector<Job> jobs;

  /// v = sum of job sizes; deadlines beyond v are never needed.
  long horizon() const;
};

/// Throws InputError naming the offending field.
void validate(const Instance& inst);

/// GSP JSON: {"machines": int, "jobs": [{"id": str, "size": int, "cost": [[t, value], ...]}]}.
Instance parse_gsp(std::string_view document);
std::string to_json(const Instance& inst);

struct Candidate {
  long deadline = 0;
  Rational cost;           // rounded cost used by the covering reduction
  Rational original_cost;  // f_j(deadline)
};

/// Per job: deadlines c_{j,0} < c_{j,1} < ... with rounded costs 0, then increasing powers of two.
struct CandidateDeadlines {
  Rational opt_guess;
  std::vector<std::vector<Candidate>> per_job;

  /// Product of per-job candidate counts, saturating at `cap + 1`.
  std::uint64_t grid_size(std::uint64_t cap) const;
};

/// Rounds each curve to powers of two (or to 0 when f <= opt_guess / n) and keeps the
/// latest time of every rounded level within [0, v]. Throws InputError if opt_guess <= 0.
CandidateDeadlines preprocess(const Instance& inst, const Rational& opt_guess);

/// A completion deadline per job, indexed like Instance::jobs.
using Deadlines = std::vector<long>;

/// sum_j min(p_j, max(c_j - b, 0)) - (sum_j p_j - m b).
long feasibility_slack(const Deadlines& deadlines, const Instance& inst, long b);

/// True iff the slack is >= 0 for every b in 0..v; only breakpoints of the slack are evaluated.
/// Throws InputError if a deadline lies outside [0, v].
bool check_feasible(const Deadlines& deadlines, const Instance& inst);

struct FlowResult {
  bool feasible = false;
  long value = 0;
  /// Slots (1-based) carrying one unit of flow from each job.
  std::vector<std::vector<long>> job_slots;
};

inline constexpr long kDefaultFlowHorizonCap = 10000;

/// source -> job (p_j), job -> slot 1..c_j (1), slot -> sink (m); maximum flow by Dinic.
/// Throws InputError when v exceeds `horizon_cap` (use check_feasible instead).
FlowResult max_flow_feasible(const Deadlines& deadlines, const Instance& inst,
                             long horizon_cap = kDefaultFlowHorizonCap);

/// Slot-by-machine table; cells hold a job index or -1 for idle.
struct Schedule {
  long slots = 0;
  int machines = 0;
  std::vector<std::vector<int>> cells;  // [slot - 1][machine - 1]

  /// Last occupied slot of `job`, 0 if it never runs.
  long completion(int job) const;
};

/// Turns the integral max flow into a schedule. Throws StageError for infeasible deadlines.
Schedule extract_schedule(const Deadlines& deadlines, const Instance& inst,
                          long horizon_cap = kDefaultFlowHorizonCap);

/// Empty when every Schedule invariant holds; otherwise one message per violation.
std::vector<std::string> verify_schedule(const Schedule& schedule, const Instance& inst, const Deadlines& deadlines);

/// {"slots": [[slot, machine, job_id], ...]}, 1-based slots and machines.
std::string schedule_to_json(const Schedule& schedule, const Instance& inst);

/// Sum of original costs f_j(c_j).
Rational deadline_cost(const Deadlines& deadlines, const Instance& inst);

struct OracleResult {
  Deadlines deadlines;
  std::vector<int> choice;  // candidate index per job
  Rational cost;
};

inline constexpr std::uint64_t kDefaultOracleCap = 1000000;

/// Exhaustive optimum (original costs) over the candidate grid. Throws InputError if the grid exceeds `cap`.
OracleResult brute_force_gsp(const Instance& inst, const CandidateDeadlines& candidates,
                             std::uint64_t cap = kDefaultOracleCap);

/// Every job's full list of "latest time at each distinct original value" deadlines. The exact
/// GSP optimum is attained on this grid because each f_j is a non-decreasing step function.
CandidateDeadlines exact_grid(const Instance& inst);

}  // namespace capcover::gsp
