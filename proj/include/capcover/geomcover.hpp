#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capcover/lift.hpp"
#include "capcover/profile.hpp"
#include "capcover/rational.hpp"

namespace capcover::geomcover {

/// Weighted multi-cover: element e must lie in at least `req` distinct selected sets.
struct SetCoverInstance {
  struct Element {
    std::string id;
    long req = 1;
    std::optional<size_t> point;  // provenance from the lifting
    std::optional<int> level;
  };
  struct Set {
    std::string id;
    Rational cost;
    std::vector<size_t> covers;  // element indices
    std::optional<size_t> profile;
  };

  std::vector<Element> elements;
  std::vector<Set> sets;
};

SetCoverInstance from_lifted(const lift::LiftedInstance& lifted);

/// SetCover JSON: {"elements": [{"id", "req"}], "sets": [{"id", "cost", "covers": [element ids]}]}.
SetCoverInstance parse_setcover(std::string_view document);
std::string to_json(const SetCoverInstance& inst);

/// Empty when every element can reach its requirement using all sets; else the short elements.
std::vector<size_t> uncoverable_elements(const SetCoverInstance& inst);

struct Cover {
  std::vector<size_t> sets;  // ascending, each at most once
  Rational cost;
};

bool is_feasible(const SetCoverInstance& inst, const Cover& cover);
std::string to_json(const SetCoverInstance& inst, const Cover& cover);

/// Repeatedly takes the set with least cost per unit of residual requirement it reduces;
/// ties by lower cost, then id. Throws StageError on infeasible instances.
Cover greedy_multicover(const SetCoverInstance& inst);

inline constexpr size_t kDefaultExactCap = 20;

/// Minimum-cost multi-cover by branch and bound with LP-bound pruning. Oracle.
Cover exact_multicover(const SetCoverInstance& inst, size_t max_sets = kDefaultExactCap);

struct LpValue {
  Rational value;  // 12-digit snapshot of the LP optimum
  std::vector<double> x;
};

/// min sum w x  s.t.  sum_{s ni e} x_s >= req_e,  0 <= x <= 1.
LpValue setcover_lp(const SetCoverInstance& inst);

enum class Rounding { kGreedy, kExact, kAuto };
Rounding parse_rounding(std::string_view name);
/// auto: exact up to kDefaultExactCap sets, else greedy.
Cover round_cover(const SetCoverInstance& inst, Rounding mode);

/// Upper envelope of induced objects, with the Davenport-Schinzel diagnostics.
struct EnvelopeReport {
  struct Edge {
    std::string object;
    Rational from, to;
  };
  std::vector<Edge> edges;
  std::vector<std::string> sequence;
  size_t objects = 0;
  int order = 2;                                  // claimed DS order s
  std::optional<std::vector<size_t>> violation;   // indices into `sequence`
  size_t longest_alternation = 0;

  bool ds_order_ok() const { return !violation.has_value(); }
};

/// Sweep over support endpoints, vertices and pairwise crossings in exact arithmetic. Equal-height
/// ties go to the lexicographically smaller id; abscissas where the maximum is 0 belong to no edge.
EnvelopeReport upper_envelope(const std::vector<Profile>& objects, int order = 2);

/// Owner of the envelope at x (nullopt when every object is 0 or absent there).
std::optional<size_t> envelope_owner(const std::vector<Profile>& objects, const Rational& x);

/// Witness indices of an alternation a b a b ... of length s + 2, or nullopt.
std::optional<std::vector<size_t>> ds_order_check(const std::vector<std::string>& sequence, int order);

/// Length of the longest two-symbol alternation in the sequence.
size_t longest_alternation(const std::vector<std::string>& sequence);

std::string to_json(const EnvelopeReport& report);

}  // namespace capcover::geomcover
