#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "capcover/errors.hpp"
#include "capcover/geomcover.hpp"
#include "capcover/gsp.hpp"
#include "capcover/json_util.hpp"
#include "capcover/kclp.hpp"
#include "capcover/lift.hpp"
#include "capcover/pipeline.hpp"
#include "capcover/random_instances.hpp"
#include "capcover/suites.hpp"
#include "capcover/trcgen.hpp"

using namespace capcover;
using nlohmann::json;

namespace {

struct Flags {
  std::string beta = "8";
  double tol = 1e-7;
  std::string rounding = "auto";
  std::uint64_t seed = suites::kDefaultSeed;
  std::string opt_guess;
  int max_cut_rounds = 200;
  std::string report = "json";
  std::string input = "-";
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Rational parse_flag(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw InputError("--" + name + ": not a number: " + text);
  }
}

kclp::Options lp_options(const Flags& f) {
  kclp::Options options;
  options.beta = parse_flag("beta", f.beta);
  options.tol = f.tol;
  options.max_rounds = f.max_cut_rounds;
  return options;
}

pipeline::Options pipeline_options(const Flags& f) {
  pipeline::Options options;
  options.beta = parse_flag("beta", f.beta);
  options.tol = f.tol;
  options.max_cut_rounds = f.max_cut_rounds;
  options.rounding = geomcover::parse_rounding(f.rounding);
  if (!f.opt_guess.empty()) options.opt_guess = parse_flag("opt-guess", f.opt_guess);
  return options;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_solve(const Flags& f, bool no_oracle) {
  const auto inst = gsp::parse_gsp(read_input(f.input));
  auto options = pipeline_options(f);
  options.run_oracle = !no_oracle;
  if (options.beta < 8) std::cerr << "warning: beta < 8 voids the residual rounding guarantee\n";
  const auto result = pipeline::run_pipeline(inst, options);
  if (f.report == "text") {
    std::cout << pipeline::to_text(result.ledger);
    std::cout << "deadlines:";
    for (size_t j = 0; j < inst.jobs.size(); ++j) std::cout << " " << inst.jobs[j].id << "=" << result.deadlines[j];
    std::cout << "\n";
    return 0;
  }
  json out;
  out["ledger"] = json::parse(pipeline::to_json(result.ledger));
  out["deadlines"] = json::object();
  for (size_t j = 0; j < inst.jobs.size(); ++j) out["deadlines"][inst.jobs[j].id] = result.deadlines[j];
  if (result.schedule) out["schedule"] = json::parse(gsp::schedule_to_json(*result.schedule, inst));
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_reduce(const Flags& f) {
  const auto inst = gsp::parse_gsp(read_input(f.input));
  const Rational guess = f.opt_guess.empty() ? pipeline::initial_guess(inst) : parse_flag("opt-guess", f.opt_guess);
  const auto candidates = gsp::preprocess(inst, guess);
  std::cout << to_json(trcgen::build_trc(inst, candidates)) << "\n";
  return 0;
}

int cmd_lp(const Flags& f, bool exhaustive) {
  const auto inst = parse_capcover(read_input(f.input));
  auto options = lp_options(f);
  options.exhaustive = exhaustive;
  const auto frac = kclp::solve_kc_lp(inst, options);
  print_warnings(frac.warnings);
  json out;
  out["objective"] = rational_report(frac.objective);
  out["x"] = json::object();
  for (size_t z = 0; z < inst.profiles.size(); ++z) out["x"][inst.profiles[z].id] = rational_to_json(frac.x[z]);
  out["cuts"] = frac.cuts.size();
  out["rounds"] = frac.rounds;
  out["pivots"] = frac.pivots;
  const auto res = kclp::select_heavy(inst, frac.x, options.beta);
  out["heavy"] = json::array();
  for (size_t z : res.heavy) out["heavy"].push_back(inst.profiles[z].id);
  out["beta_cover"] = kclp::verify_beta_cover(inst, res, options.tol);
  if (f.report == "text") {
    std::cout << "objective " << to_string(frac.objective) << " (" << to_decimal(frac.objective, 6) << "), "
              << frac.cuts.size() << " cuts, " << frac.rounds << " rounds, " << res.heavy.size() << " heavy\n";
    return 0;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_lift(const Flags& f) {
  const auto inst = parse_capcover(read_input(f.input));
  const auto options = lp_options(f);
  const auto frac = kclp::solve_kc_lp(inst, options);
  print_warnings(frac.warnings);
  const auto res = kclp::select_heavy(inst, frac.x, options.beta);
  const auto lifted = lift::build_lifted(inst, res);
  if (!lifted.unclassified_points.empty())
    throw VerificationError("point " + std::to_string(lifted.unclassified_points.front()) + " has no classified profile");
  lift::induced_fractional(lifted);
  std::cout << geomcover::to_json(geomcover::from_lifted(lifted)) << "\n";
  return 0;
}

int cmd_round(const Flags& f) {
  const auto inst = geomcover::parse_setcover(read_input(f.input));
  const auto cover = geomcover::round_cover(inst, geomcover::parse_rounding(f.rounding));
  json out = json::parse(geomcover::to_json(inst, cover));
  out["lp_value"] = rational_report(geomcover::setcover_lp(inst).value);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_verify(const Flags& f, bool claims_only) {
  std::vector<suites::Outcome> outcomes;
  if (claims_only) {
    outcomes.push_back(suites::lifting(f.seed));
  } else {
    outcomes = suites::all(f.seed);
  }
  bool ok = true;
  for (const auto& o : outcomes) {
    std::cout << suites::format(o) << "\n";
    ok = ok && o.passed();
  }
  return ok ? 0 : 4;
}

int cmd_envelope(const Flags& f, int order) {
  json doc = parse_document(read_input(f.input));
  if (!doc.is_object()) throw InputError("envelope document must be an object with \"profiles\"");
  if (!doc.contains("points")) doc["points"] = json::array();
  const auto inst = parse_capcover(doc.dump());
  std::cout << geomcover::to_json(geomcover::upper_envelope(inst.profiles, order)) << "\n";
  return 0;
}

int cmd_oracle(const Flags& f) {
  const std::string text = read_input(f.input);
  const json doc = parse_document(text);
  json out;
  if (doc.is_object() && doc.contains("jobs")) {
    const auto inst = gsp::parse_gsp(text);
    const auto grid = f.opt_guess.empty() ? gsp::exact_grid(inst) : gsp::preprocess(inst, parse_flag("opt-guess", f.opt_guess));
    const auto best = gsp::brute_force_gsp(inst, grid);
    out["cost"] = rational_report(best.cost);
    out["deadlines"] = json::object();
    for (size_t j = 0; j < inst.jobs.size(); ++j) out["deadlines"][inst.jobs[j].id] = best.deadlines[j];
  } else if (doc.is_object() && doc.contains("profiles")) {
    const auto inst = parse_capcover(text);
    const auto best = exact_capcover(inst);
    out["cost"] = rational_report(best.cost);
    out["profiles"] = json::array();
    for (size_t z : best.selection) out["profiles"].push_back(inst.profiles[z].id);
  } else if (doc.is_object() && doc.contains("sets")) {
    const auto inst = geomcover::parse_setcover(text);
    out = json::parse(geomcover::to_json(inst, geomcover::exact_multicover(inst)));
  } else {
    throw InputError("oracle: expected a GSP, CapCover or SetCover document");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_bench(const Flags& f, int count, int max_jobs) {
  auto options = pipeline_options(f);
  random::GspShape shape;
  shape.max_jobs = max_jobs;
  std::cout << "seed,jobs,machines,horizon,guess,final_cost,oracle_opt,ratio,gamma,trc_profiles,lifted_elements,seconds\n";
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = f.seed + static_cast<std::uint64_t>(i);
    random::Rng rng(seed);
    const auto inst = random::random_gsp(rng, shape);
    const auto start = std::chrono::steady_clock::now();
    const auto result = pipeline::run_pipeline(inst, options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto& l = result.ledger;
    std::cout << seed << "," << inst.jobs.size() << "," << inst.machines << "," << inst.horizon() << ","
              << to_decimal(l.opt_guess, 6) << "," << to_decimal(l.final_cost, 6) << ","
              << (l.oracle_opt ? to_decimal(*l.oracle_opt, 6) : "") << ","
              << (l.oracle_opt && *l.oracle_opt > 0 ? to_decimal(l.final_cost / *l.oracle_opt, 6) : "") << ","
              << to_decimal(l.cover.gamma, 6) << "," << l.trc_profiles << "," << l.lifted_elements << "," << seconds
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacitated covering pipeline for general scheduling"};
  app.require_subcommand(1);
  Flags f;
  auto common = [&](CLI::App* sub, bool with_input = true) {
    sub->add_option("--beta", f.beta, "heavy threshold 1/beta (default 8)");
    sub->add_option("--tol", f.tol, "LP feasibility tolerance");
    sub->add_option("--rounding", f.rounding, "greedy | exact | auto")->check(CLI::IsMember({"greedy", "exact", "auto"}));
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--opt-guess", f.opt_guess, "fixed OPT guess (skips the doubling search)");
    sub->add_option("--max-cut-rounds", f.max_cut_rounds, "cutting-plane round limit");
    sub->add_option("--report", f.report, "json | text")->check(CLI::IsMember({"json", "text"}));
    if (with_input) sub->add_option("input", f.input, "input JSON file, - for stdin");
  };

  bool no_oracle = false;
  auto* solve = app.add_subcommand("solve", "run the full pipeline on a GSP document");
  solve->alias("pipeline");
  common(solve);
  solve->add_flag("--no-oracle", no_oracle, "skip the brute-force optimum");

  auto* reduce = app.add_subcommand("reduce", "GSP document -> TRC capacitated cover document");
  common(reduce);

  bool exhaustive = false;
  auto* lp = app.add_subcommand("lp", "KC LP on a CapCover document");
  common(lp);
  lp->add_flag("--exhaustive", exhaustive, "separate over every heavy set (small instances)");

  auto* lift_cmd = app.add_subcommand("lift", "CapCover document -> lifted SetCover document");
  common(lift_cmd);

  auto* round = app.add_subcommand("round", "round a SetCover document");
  common(round);

  bool claims_only = false;
  auto* verify = app.add_subcommand("verify", "run the seeded property suites");
  common(verify, false);
  verify->add_flag("--claims", claims_only, "only the lifting suite");

  int order = 2;
  auto* envelope = app.add_subcommand("envelope", "upper envelope and DS diagnostics of a profile family");
  common(envelope);
  envelope->add_option("--order", order, "claimed DS order s")->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "exact optimum of a GSP, CapCover or SetCover document");
  common(oracle);

  int count = 20;
  int max_jobs = 5;
  auto* bench = app.add_subcommand("bench", "seeded random sweep, CSV on stdout");
  common(bench, false);
  bench->add_option("--count", count, "instances")->check(CLI::PositiveNumber);
  bench->add_option("--max-jobs", max_jobs, "jobs per instance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(f, no_oracle);
    if (*reduce) return cmd_reduce(f);
    if (*lp) return cmd_lp(f, exhaustive);
    if (*lift_cmd) return cmd_lift(f);
    if (*round) return cmd_round(f);
    if (*verify) return cmd_verify(f, claims_only);
    if (*envelope) return cmd_envelope(f, order);
    if (*oracle) return cmd_oracle(f);
    if (*bench) return cmd_bench(f, count, max_jobs);
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const StageError& e) {
    std::cerr << "stage failure " << e.what() << "\n";
    return 3;
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
