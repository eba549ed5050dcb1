#pragma once

#include <string>
#include <vector>

#include "capcover/gsp.hpp"
#include "capcover/kclp.hpp"
#include "capcover/profile.hpp"

namespace capcover::trcgen {

/// u_{p,c}(t) = min(p, c - t) for t <= c, else 0.
long wedge_value(long p, long c, long t);

/// Difference of consecutive wedges of one job: t_{j,i} = u_{p,c_i} - u_{p,c_{i-1}}, t_{j,0} = u_{p,c_0}.
struct Trapezoid {
  size_t job = 0;
  std::string job_id;
  int index = 0;
  long size = 0;
  long prev_deadline = -1;  // c_{j,i-1}; -1 for index 0
  long deadline = 0;        // c_{j,i}
  Rational cost;            // rounded f_j(c_{j,i}); 0 for index 0

  long value(long b) const;
};

std::vector<Trapezoid> build_trapezoids(const gsp::Instance& inst, const gsp::CandidateDeadlines& candidates);

/// At most one rising triangle, one rectangle and one falling triangle, each carrying the
/// trapezoid's cost and provenance. Closed integer supports partition the integer points, so the
/// pieces sum to the trapezoid at every integer b >= 0. Pieces with no positive capacity at any
/// integer point are dropped.
std::vector<Profile> split_trapezoid(const Trapezoid& trapezoid);

/// Trapezoid as a single piecewise-linear profile (exact at every real b >= 0).
Profile trapezoid_profile(const Trapezoid& trapezoid);

/// Leftmost and rightmost integer of each maximal run of {0..v} lying in the same set of
/// linear-piece supports, ascending.
std::vector<long> reduce_points(long v, const std::vector<Profile>& profiles);

/// d_b = sum_j p_j - m b.
long demand_at(const gsp::Instance& inst, long b);

/// TRC instance: every split piece, and the reduced points with d_b > 0.
CapCoverInstance build_trc(const gsp::Instance& inst, const gsp::CandidateDeadlines& candidates);

/// Trapezoid-cover instance (one pwl profile per non-empty trapezoid) over all points 0..v with d_b > 0.
CapCoverInstance build_trapezoid_cover(const gsp::Instance& inst, const gsp::CandidateDeadlines& candidates);

/// Highest selected trapezoid index per job (0 when none); deadline c_{j,i(j)}.
gsp::Deadlines cover_to_deadlines(const CapCoverInstance& trc, const std::vector<size_t>& selection,
                                  const gsp::Instance& inst, const gsp::CandidateDeadlines& candidates);

}  // namespace capcover::trcgen
