#include "capcover/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "capcover/errors.hpp"
#include "capcover/geomcover.hpp"
#include "capcover/gsp.hpp"
#include "capcover/lift.hpp"
#include "capcover/pipeline.hpp"
#include "capcover/random_instances.hpp"
#include "capcover/trcgen.hpp"

namespace capcover::suites {

using random::Rng;
using random::uniform;

namespace {

constexpr size_t kMaxNotes = 5;

// Runs `trial(i, outcome)` count times, turning exceptions into failures.
Outcome run(const std::string& name, int count, const std::function<void(int, Outcome&)>& trial) {
  Outcome out;
  out.name = name;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < count; ++i) {
    try {
      trial(i, out);
    } catch (const std::exception& e) {
      ++out.failures;
      if (out.notes.size() < kMaxNotes) out.notes.push_back("trial " + std::to_string(i) + ": " + e.what());
    }
    ++out.trials;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void fail(Outcome& out, const std::string& message) {
  ++out.failures;
  if (out.notes.size() < kMaxNotes) out.notes.push_back(message);
}

}  // namespace

CapCoverInstance two_point_instance() {
  CapCoverInstance inst;
  inst.points = {{2, 1}, {5, 7}};
  inst.profiles = {make_rect("z1", 0, 3, 1, 1), make_triangle("z2", 0, 6, Slope::kRise, 1),
                   make_triangle("z3", 3, 6, Slope::kRise, 1)};
  return inst;
}

Outcome two_point() {
  return run("two_point", 1, [](int, Outcome& out) {
    const CapCoverInstance inst = two_point_instance();
    const Rational at_u = inst.capacity(1, 0) + inst.capacity(2, 0);
    const Rational at_v = inst.capacity(1, 1) + inst.capacity(2, 1);
    if (at_u != 2 || at_v != 7) fail(out, "capacities at u, v are " + to_string(at_u) + ", " + to_string(at_v));
    if (!verify_capcover(inst, {1, 2})) fail(out, "{z2, z3} rejected");
    if (verify_capcover(inst, {2})) fail(out, "{z3} accepted");
    if (exact_capcover(inst).cost != 2) fail(out, "optimum is not 2");
  });
}

Outcome feasibility(std::uint64_t seed, int count) {
  size_t feasible = 0;
  random::GspShape shape{8, 3, 7, 0, 1};
  auto out = run("feasibility", count, [&](int i, Outcome& o) {
    Rng rng(seed + static_cast<std::uint64_t>(i));
    const auto inst = random::random_gsp(rng, shape);
    const long v = inst.horizon();
    gsp::Deadlines deadlines;
    for (const auto& job : inst.jobs)
      deadlines.push_back(uniform(rng, 0, 4) == 0 ? uniform(rng, 0, v) : uniform(rng, std::min(job.size, v), v));
    const bool by_slack = gsp::check_feasible(deadlines, inst);
    const auto flow = gsp::max_flow_feasible(deadlines, inst);
    if (by_slack != flow.feasible)
      fail(o, "seed " + std::to_string(seed + i) + ": breakpoint test says " + (by_slack ? "feasible" : "infeasible") +
                  ", flow " + std::to_string(flow.value) + "/" + std::to_string(v));
    feasible += by_slack;
  });
  out.notes.push_back(std::to_string(feasible) + " feasible, " + std::to_string(out.trials - feasible) + " infeasible");
  return out;
}

namespace {

// Random inclusion-minimal feasible cover: add sets in random order, then drop redundant ones.
geomcover::Cover random_cover(const geomcover::SetCoverInstance& sc, Rng& rng) {
  std::vector<size_t> order(sc.sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  geomcover::Cover cover;
  for (size_t s : order) {
    if (geomcover::is_feasible(sc, cover)) break;
    cover.sets.push_back(s);
  }
  std::shuffle(cover.sets.begin(), cover.sets.end(), rng);
  for (size_t k = cover.sets.size(); k-- > 0;) {
    geomcover::Cover trial = cover;
    trial.sets.erase(trial.sets.begin() + static_cast<long>(k));
    if (uniform(rng, 0, 1) == 0 && geomcover::is_feasible(sc, trial)) cover = trial;
  }
  std::sort(cover.sets.begin(), cover.sets.end());
  cover.cost = 0;
  for (size_t s : cover.sets) cover.cost += sc.sets[s].cost;
  return cover;
}

}  // namespace

namespace {

// Light fractional solution: every x_z < 1/beta, demands set so the beta-cover inequality holds.
struct LightInstance {
  CapCoverInstance inst;
  std::vector<Rational> x;
};

LightInstance light_instance(Rng& rng, int max_points, int max_profiles) {
  LightInstance out;
  // x < 1/8 everywhere, so a point needs at least 9 overlapping profiles
  const long n = uniform(rng, 9, max_profiles);
  const long a = uniform(rng, 0, 6);
  for (long z = 0; z < n; ++z) {
    const std::string id = "z" + std::to_string(z + 1);
    const long lo = a + uniform(rng, 0, 3);
    const long hi = lo + uniform(rng, 6, 14);
    const Rational cost = uniform(rng, 1, 12);
    switch (uniform(rng, 0, 2)) {
      case 0:
        out.inst.profiles.push_back(make_rect(id, lo, hi, uniform(rng, 1, 10), cost));
        break;
      case 1:
        out.inst.profiles.push_back(make_triangle(id, lo, hi, Slope::kRise, cost));
        break;
      default:
        out.inst.profiles.push_back(make_triangle(id, lo, hi, Slope::kFall, cost));
    }
    out.x.push_back(ratio(uniform(rng, 60, 99), 800));  // in [3/40, 1/8)
  }
  const long points = uniform(rng, 1, max_points);
  for (long k = 0; k < points; ++k) {
    const Rational x = uniform(rng, a, a + 12);
    if (std::any_of(out.inst.points.begin(), out.inst.points.end(), [&](const DemandPoint& p) { return p.x == x; }))
      continue;
    // sum_z min(c_z, d) x'_z >= 8 d is monotone in d, so halve from a random start
    auto holds = [&](const Rational& d) {
      Rational lhs = 0;
      for (size_t z = 0; z < out.x.size(); ++z) lhs += min(out.inst.profiles[z].capacity(x), d) * 8 * out.x[z];
      return lhs >= 8 * d;
    };
    Rational total = 0;
    for (size_t z = 0; z < out.x.size(); ++z) total += out.inst.profiles[z].capacity(x) * out.x[z];
    Rational d = total * uniform(rng, 1, 8) / 8;
    for (int halvings = 0; d > 0 && !holds(d) && halvings < 40; ++halvings) d /= 2;
    if (d > 0 && holds(d)) out.inst.points.push_back({x, d});
  }
  return out;
}

// Both lifting checks on one fractional solution; returns false after recording a failure.
bool check_claims(const CapCoverInstance& inst, const std::vector<Rational>& x, Rng& rng, int random_covers,
                  const std::string& tag, Outcome& o, size_t& checked, size_t& nontrivial) {
  const auto res = kclp::select_heavy(inst, x, 8);
  if (!kclp::verify_beta_cover(inst, res)) return fail(o, tag + "beta-cover fails"), false;
  const auto lifted = lift::build_lifted(inst, res);
  if (!lifted.unclassified_points.empty()) return fail(o, tag + "unclassified point"), false;
  lift::induced_fractional(lifted);  // throws on a violation
  const auto sc = geomcover::from_lifted(lifted);
  nontrivial += !sc.elements.empty();

  std::vector<std::pair<std::string, geomcover::Cover>> covers;
  covers.emplace_back("greedy", geomcover::greedy_multicover(sc));
  covers.emplace_back("exact", geomcover::exact_multicover(sc));
  for (int k = 0; k < random_covers; ++k) covers.emplace_back("random", random_cover(sc, rng));
  for (const auto& [kind, cover] : covers) {
    const auto mapped = lift::map_back(lifted, cover.sets, inst, res);
    ++checked;
    if (!mapped.verdict) return fail(o, tag + kind + " cover maps back short"), false;
  }
  return true;
}

}  // namespace

Outcome lifting(std::uint64_t seed, int count, int random_covers) {
  size_t checked = 0;
  size_t nontrivial = 0;
  auto out = run("lifting", count, [&](int i, Outcome& o) {
    Rng rng(seed + 1000 + static_cast<std::uint64_t>(i));
    const std::string tag = "trial " + std::to_string(i) + ": ";
    const auto inst = random::random_capcover(rng, 8, 10);
    const auto frac = kclp::solve_kc_lp(inst);
    if (!check_claims(inst, frac.x, rng, random_covers, tag + "lp ", o, checked, nontrivial)) return;
    const auto light = light_instance(rng, 8, 16);
    check_claims(light.inst, light.x, rng, random_covers, tag + "light ", o, checked, nontrivial);
  });
  out.notes.push_back(std::to_string(checked) + " lifted covers mapped back, " + std::to_string(nontrivial) +
                      " non-empty liftings");
  return out;
}

Outcome kc_gap(std::uint64_t seed, int count) {
  Rational worst = 0;
  auto out = run("kc_gap", count, [&](int i, Outcome& o) {
    Rng rng(seed + 2000 + static_cast<std::uint64_t>(i));
    const auto inst = random::random_knapsack(rng, 10);
    kclp::Options options;
    options.exhaustive = true;
    const auto frac = kclp::solve_kc_lp(inst, options);
    const Rational opt = exact_capcover(inst).cost;
    if (opt == 0) return;
    if (frac.objective <= 0) return fail(o, "trial " + std::to_string(i) + ": LP value 0 with OPT " + to_string(opt));
    const Rational ratio = opt / frac.objective;
    worst = max(worst, ratio);
    if (ratio > Rational(2) + snapshot(1e-5))
      fail(o, "trial " + std::to_string(i) + ": OPT / LP = " + to_decimal(ratio, 6));
  });

  // classic instance: the plain LP pays 1/10, the KC cut forces the full unit
  try {
    CapCoverInstance gap;
    gap.points = {{0, 10}};
    gap.profiles = {make_rect("A", 0, 0, 10, 1), make_rect("B", 0, 0, 9, 0)};
    const auto frac = kclp::solve_kc_lp(gap);
    if (frac.objective < Rational(1) - snapshot(1e-6)) fail(out, "gap instance LP value " + to_decimal(frac.objective, 9));
    out.notes.push_back("gap instance LP value " + to_decimal(frac.objective, 9));
  } catch (const std::exception& e) {
    fail(out, std::string("gap instance: ") + e.what());
  }
  ++out.trials;
  out.notes.push_back("worst OPT / LP " + to_decimal(worst, 6));
  return out;
}

Outcome end_to_end(std::uint64_t seed, int count) {
  Rational worst = 0;
  auto out = run("end_to_end", count, [&](int i, Outcome& o) {
    Rng rng(seed + 3000 + static_cast<std::uint64_t>(i));
    const auto inst = random::random_gsp(rng);
    pipeline::Options options;
    options.run_oracle = false;
    const auto result = pipeline::run_pipeline(inst, options);
    const std::string tag = "trial " + std::to_string(i) + ": ";
    if (!result.schedule || !gsp::verify_schedule(*result.schedule, inst, result.deadlines).empty())
      return fail(o, tag + "no valid schedule");
    for (size_t j = 0; j < inst.jobs.size(); ++j) {
      if (result.schedule->completion(static_cast<int>(j)) > result.deadlines[j]) return fail(o, tag + "late job");
    }
    const Rational opt = gsp::brute_force_gsp(inst, gsp::exact_grid(inst)).cost;
    const auto& ledger = result.ledger;
    if (ledger.final_cost > Rational(108) * ledger.cover.gamma * opt)
      return fail(o, tag + "cost " + to_string(ledger.final_cost) + " vs OPT " + to_string(opt) + ", gamma " +
                         to_string(ledger.cover.gamma));
    if (opt > 0) worst = max(worst, ledger.final_cost / opt);
  });
  out.notes.push_back("worst final / OPT " + to_decimal(worst, 6));
  return out;
}

Outcome sandwich(std::uint64_t seed, int count) {
  Rational worst = 0;
  auto out = run("sandwich", count, [&](int i, Outcome& o) {
    Rng rng(seed + 4000 + static_cast<std::uint64_t>(i));
    const auto inst = random::random_gsp(rng, {3, 2, 3, 3, 16});
    const std::string tag = "trial " + std::to_string(i) + ": ";
    const Rational opt_i = gsp::brute_force_gsp(inst, gsp::exact_grid(inst)).cost;
    // guess / n stays below the smallest positive cost, so no cost is rounded to 0
    const auto candidates = gsp::preprocess(inst, pipeline::initial_guess(inst));
    const Rational opt_t = exact_capcover(trcgen::build_trapezoid_cover(inst, candidates)).cost;
    if (opt_t < opt_i || opt_t > 4 * opt_i)
      return fail(o, tag + "OPT(I) = " + to_string(opt_i) + ", OPT(T) = " + to_string(opt_t));
    const auto trc = trcgen::build_trc(inst, candidates);
    if (trc.profiles.size() <= 24) {
      const Rational opt_trc = exact_capcover(trc).cost;
      if (opt_trc < opt_t || opt_trc > 3 * opt_t)
        return fail(o, tag + "OPT(T) = " + to_string(opt_t) + ", OPT(TRC) = " + to_string(opt_trc));
    }
    if (opt_i > 0) worst = max(worst, opt_t / opt_i);
  });
  out.notes.push_back("worst OPT(T) / OPT(I) " + to_decimal(worst, 6));
  return out;
}

namespace {

void check_family(const std::vector<Profile>& family, int order, size_t max_edges, Rng& rng, int samples,
                  const std::string& tag, Outcome& o) {
  const auto report = geomcover::upper_envelope(family, order);
  if (report.edges.size() > max_edges)
    return fail(o, tag + std::to_string(report.edges.size()) + " edges for " + std::to_string(family.size()) + " objects");
  if (!report.ds_order_ok()) return fail(o, tag + "DS order " + std::to_string(order) + " violated");
  std::map<std::string, size_t> by_id;
  for (size_t k = 0; k < family.size(); ++k) by_id[family[k].id] = k;
  for (int s = 0; s < samples; ++s) {
    const Rational x = ratio(uniform(rng, -5000, 140000), 1000);
    Rational top = 0;
    for (const auto& obj : family) top = max(top, obj.capacity(x));
    if (top == 0) continue;
    bool matched = false;
    for (const auto& edge : report.edges) {
      if (edge.from <= x && x <= edge.to && family[by_id.at(edge.object)].capacity(x) == top) {
        matched = true;
        break;
      }
    }
    if (!matched) return fail(o, tag + "envelope disagrees with the pointwise max at x = " + to_string(x));
  }
}

}  // namespace

Outcome envelope(std::uint64_t seed, int count, int samples) {
  auto out = run("envelope", 2 * count, [&](int i, Outcome& o) {
    Rng rng(seed + 5000 + static_cast<std::uint64_t>(i));
    const int t = static_cast<int>(uniform(rng, 1, 50));
    if (i < count) {
      check_family(random::random_rectangles(rng, t), 2, static_cast<size_t>(2 * t - 1), rng, samples,
                   "rectangles " + std::to_string(i) + ": ", o);
    } else {
      const Slope dir = i % 2 == 0 ? Slope::kRise : Slope::kFall;
      check_family(random::random_triangles(rng, t, dir), 1, static_cast<size_t>(t), rng, samples,
                   "triangles " + std::to_string(i) + ": ", o);
    }
  });
  return out;
}

Outcome point_reduction(std::uint64_t seed, int count, int selections) {
  size_t satisfied = 0;
  size_t total = 0;
  auto out = run("point_reduction", count, [&](int i, Outcome& o) {
    Rng rng(seed + 6000 + static_cast<std::uint64_t>(i));
    const auto inst = random::random_gsp(rng, {8, 3, 7, 3, 16});
    const auto candidates = gsp::preprocess(inst, pipeline::initial_guess(inst));
    const auto trc = trcgen::build_trc(inst, candidates);
    CapCoverInstance full;
    full.profiles = trc.profiles;
    for (long b = 0; b <= inst.horizon(); ++b) {
      const long d = trcgen::demand_at(inst, b);
      if (d > 0) full.points.push_back({b, d});
    }
    static constexpr int kKeep[] = {50, 70, 85, 95, 100};
    for (int s = 0; s < selections; ++s) {
      const long keep = kKeep[s % 5];
      std::vector<size_t> selection;
      for (size_t z = 0; z < trc.profiles.size(); ++z) {
        if (uniform(rng, 1, 100) <= keep) selection.push_back(z);
      }
      const bool reduced = verify_capcover(trc, selection);
      const bool all = verify_capcover(full, selection);
      ++total;
      satisfied += all;
      if (reduced != all)
        return fail(o, "trial " + std::to_string(i) + ": reduced points say " + (reduced ? "covered" : "uncovered") +
                           ", all points say " + (all ? "covered" : "uncovered"));
    }
  });
  out.notes.push_back(std::to_string(satisfied) + " of " + std::to_string(total) + " selections cover every point");
  return out;
}

std::vector<Outcome> all(std::uint64_t seed) {
  return {two_point(),   feasibility(seed), lifting(seed),   kc_gap(seed),
          end_to_end(seed), sandwich(seed), envelope(seed), point_reduction(seed)};
}

std::string format(const Outcome& outcome) {
  std::ostringstream line;
  line << (outcome.passed() ? "PASS " : "FAIL ") << outcome.name << ": " << outcome.trials - outcome.failures << "/"
       << outcome.trials << " ok";
  line.setf(std::ios::fixed);
  line.precision(2);
  line << " (" << outcome.seconds << "s)";
  for (const auto& note : outcome.notes) line << "; " << note;
  return line.str();
}

}  // namespace capcover::suites
