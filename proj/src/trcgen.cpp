#include "capcover/trcgen.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "capcover/errors.hpp"

namespace capcover::trcgen {

long wedge_value(long p, long c, long t) {
  if (t > c) return 0;
  return std::min(p, c - t);
}

long Trapezoid::value(long b) const {
  long total = wedge_value(size, deadline, b);
  if (prev_deadline >= 0) total -= wedge_value(size, prev_deadline, b);
  return total;
}

std::vector<Trapezoid> build_trapezoids(const gsp::Instance& inst, const gsp::CandidateDeadlines& candidates) {
  std::vector<Trapezoid> out;
  for (size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& list = candidates.per_job[j];
    for (size_t i = 0; i < list.size(); ++i) {
      Trapezoid t;
      t.job = j;
      t.job_id = inst.jobs[j].id;
      t.index = static_cast<int>(i);
      t.size = inst.jobs[j].size;
      t.prev_deadline = i == 0 ? -1 : list[i - 1].deadline;
      t.deadline = list[i].deadline;
      t.cost = i == 0 ? Rational(0) : list[i].cost;
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<Profile> split_trapezoid(const Trapezoid& trapezoid) {
  const long p = trapezoid.size;
  const long c_hi = trapezoid.deadline;
  const std::string stem = trapezoid.job_id + ":" + std::to_string(trapezoid.index) + ":";

  std::vector<Profile> pieces;
  auto add = [&](Profile piece) {
    piece.prov = Provenance{trapezoid.job_id, trapezoid.index};
    pieces.push_back(std::move(piece));
  };

  if (trapezoid.prev_deadline < 0) {
    // u_{p,c}: height p on [0, c - p], then c - b down to 0.
    if (c_hi <= 0) return pieces;
    if (c_hi >= p) add(make_rect(stem + "rect", 0, c_hi - p, p, trapezoid.cost));
    long fall_from = std::max(c_hi - p + 1, 0L);
    if (c_hi - fall_from >= 1) add(make_triangle(stem + "fall", fall_from, c_hi, Slope::kFall, trapezoid.cost));
    return pieces;
  }

  const long c_lo = trapezoid.prev_deadline;
  const long h = std::min(p, c_hi - c_lo);
  if (h <= 0) return pieces;

  const long rise_a = c_lo - p;
  const long rise_b = c_lo - p + h - 1;
  if (h >= 2 && rise_b >= 0) add(make_triangle(stem + "rise", rise_a, rise_b, Slope::kRise, trapezoid.cost));

  const long rect_a = std::max(c_lo - p + h, 0L);
  const long rect_b = c_hi - h;
  if (rect_b >= rect_a) add(make_rect(stem + "rect", rect_a, rect_b, h, trapezoid.cost));

  if (h >= 2) add(make_triangle(stem + "fall", c_hi - h + 1, c_hi, Slope::kFall, trapezoid.cost));
  return pieces;
}

Profile trapezoid_profile(const Trapezoid& trapezoid) {
  const long p = trapezoid.size;
  const long c_hi = trapezoid.deadline;
  const long c_lo = trapezoid.prev_deadline < 0 ? 0 : trapezoid.prev_deadline;
  std::set<long> xs{0, c_hi, c_hi - p, c_lo, c_lo - p};
  if (trapezoid.prev_deadline >= 0) {
    const long h = std::min(p, c_hi - c_lo);
    xs.insert(c_lo - p + h);
    xs.insert(c_hi - h);
  }
  PiecewiseShape shape;
  for (long x : xs) {
    if (x >= 0) shape.points.emplace_back(x, trapezoid.value(x));
  }
  Profile out{trapezoid.job_id + ":" + std::to_string(trapezoid.index), shape, trapezoid.cost,
              Provenance{trapezoid.job_id, trapezoid.index}};
  return out;
}

std::vector<long> reduce_points(long v, const std::vector<Profile>& profiles) {
  std::set<long> starts{0};
  for (const auto& profile : profiles) {
    for (const auto& seg : profile.segments()) {
      Rational lo = ceil(seg.x0);
      Rational hi = floor(seg.x1);
      if (hi < lo) continue;
      long a = lo.get_num().get_si();
      long b = hi.get_num().get_si();
      if (a > 0 && a <= v) starts.insert(a);
      if (b + 1 > 0 && b + 1 <= v) starts.insert(b + 1);
    }
  }
  std::vector<long> out;
  for (auto it = starts.begin(); it != starts.end(); ++it) {
    auto next = std::next(it);
    long last = next == starts.end() ? v : *next - 1;
    out.push_back(*it);
    if (last != *it) out.push_back(last);
  }
  return out;
}

long demand_at(const gsp::Instance& inst, long b) {
  return inst.horizon() - static_cast<long>(inst.machines) * b;
}

CapCoverInstance build_trc(const gsp::Instance& inst, const gsp::CandidateDeadlines& candidates) {
  CapCoverInstance trc;
  for (const auto& trapezoid : build_trapezoids(inst, candidates)) {
    for (auto& piece : split_trapezoid(trapezoid)) trc.profiles.push_back(std::move(piece));
  }
  for (long b : reduce_points(inst.horizon(), trc.profiles)) {
    long d = demand_at(inst, b);
    if (d > 0) trc.points.push_back({b, d});
  }
  return trc;
}

CapCoverInstance build_trapezoid_cover(const gsp::Instance& inst, const gsp::CandidateDeadlines& candidates) {
  CapCoverInstance out;
  for (const auto& trapezoid : build_trapezoids(inst, candidates)) {
    bool empty = true;
    for (long b = 0; b <= trapezoid.deadline && empty; ++b) empty = trapezoid.value(b) <= 0;
    if (!empty) out.profiles.push_back(trapezoid_profile(trapezoid));
  }
  for (long b = 0; b <= inst.horizon(); ++b) {
    long d = demand_at(inst, b);
    if (d > 0) out.points.push_back({b, d});
  }
  return out;
}

gsp::Deadlines cover_to_deadlines(const CapCoverInstance& trc, const std::vector<size_t>& selection,
                                  const gsp::Instance& inst, const gsp::CandidateDeadlines& candidates) {
  std::map<std::string, size_t> job_index;
  for (size_t j = 0; j < inst.jobs.size(); ++j) job_index[inst.jobs[j].id] = j;

  std::vector<int> highest(inst.jobs.size(), 0);
  for (size_t z : selection) {
    if (z >= trc.profiles.size()) throw InputError("cover references unknown profile " + std::to_string(z));
    const auto& prov = trc.profiles[z].prov;
    if (!prov) throw InputError("profile '" + trc.profiles[z].id + "' carries no job provenance");
    auto it = job_index.find(prov->job);
    if (it == job_index.end()) throw InputError("profile '" + trc.profiles[z].id + "' names an unknown job");
    const auto& list = candidates.per_job[it->second];
    if (prov->index < 0 || static_cast<size_t>(prov->index) >= list.size())
      throw InputError("profile '" + trc.profiles[z].id + "' names an unknown trapezoid index");
    highest[it->second] = std::max(highest[it->second], prov->index);
  }
  gsp::Deadlines out(inst.jobs.size());
  for (size_t j = 0; j < inst.jobs.size(); ++j) {
    out[j] = candidates.per_job[j][static_cast<size_t>(highest[j])].deadline;
  }
  return out;
}

}  // namespace capcover::trcgen
