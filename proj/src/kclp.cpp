#include "capcover/kclp.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "capcover/errors.hpp"
#include "capcover/json_util.hpp"
#include "capcover/simplex.hpp"

namespace capcover {

using nlohmann::json;

CapacityTable capacity_table(const CapCoverInstance& inst) {
  CapacityTable table(inst.points.size(), std::vector<Rational>(inst.profiles.size()));
  for (size_t p = 0; p < inst.points.size(); ++p) {
    for (size_t z = 0; z < inst.profiles.size(); ++z) table[p][z] = inst.capacity(z, p);
  }
  return table;
}

void validate(const CapCoverInstance& inst) {
  for (size_t p = 0; p < inst.points.size(); ++p) {
    if (inst.points[p].demand <= 0) throw InputError("points[" + std::to_string(p) + "].demand must be > 0");
  }
  for (const auto& profile : inst.profiles) validate(profile);
}

namespace {

Profile profile_from_json(const json& entry, size_t index) {
  const std::string where = "profiles[" + std::to_string(index) + "]";
  if (!entry.is_object() || !entry.contains("kind") || !entry["kind"].is_string())
    throw InputError(where + ".kind: string required");
  auto field = [&](const char* name) -> Rational {
    if (!entry.contains(name)) throw InputError(where + "." + name + ": required");
    return rational_from_json(entry[name], where + "." + name);
  };

  Profile profile;
  profile.id = entry.contains("id") && entry["id"].is_string() ? entry["id"].get<std::string>()
                                                               : "z" + std::to_string(index + 1);
  profile.cost = field("cost");
  const std::string kind = entry["kind"].get<std::string>();
  if (kind == "rect") {
    profile.shape = RectShape{field("a"), field("b"), field("h")};
  } else if (kind == "tri") {
    if (!entry.contains("dir") || !entry["dir"].is_string()) throw InputError(where + ".dir: \"rise\" or \"fall\" required");
    const std::string dir = entry["dir"].get<std::string>();
    if (dir != "rise" && dir != "fall") throw InputError(where + ".dir: \"rise\" or \"fall\" required");
    Rational slope = entry.contains("slope") ? field("slope") : Rational(1);
    profile.shape = TriangleShape{field("a"), field("b"), dir == "rise" ? Slope::kRise : Slope::kFall, slope};
  } else if (kind == "pwl") {
    if (!entry.contains("pts") || !entry["pts"].is_array()) throw InputError(where + ".pts: array required");
    PiecewiseShape shape;
    for (size_t k = 0; k < entry["pts"].size(); ++k) {
      const json& pt = entry["pts"][k];
      const std::string at = where + ".pts[" + std::to_string(k) + "]";
      if (!pt.is_array() || pt.size() != 2) throw InputError(at + ": expected [x, y]");
      shape.points.emplace_back(rational_from_json(pt[0], at), rational_from_json(pt[1], at));
    }
    profile.shape = std::move(shape);
  } else {
    throw InputError(where + ".kind: unknown kind '" + kind + "'");
  }
  if (entry.contains("prov")) {
    const json& prov = entry["prov"];
    if (!prov.is_object() || !prov.contains("job") || !prov.contains("index") || !prov["index"].is_number_integer())
      throw InputError(where + ".prov: {\"job\", \"index\"} required");
    profile.prov = Provenance{prov["job"].is_string() ? prov["job"].get<std::string>() : prov["job"].dump(),
                              prov["index"].get<int>()};
  }
  validate(profile);
  return profile;
}

json profile_to_json(const Profile& profile) {
  json out;
  out["id"] = profile.id;
  out["kind"] = profile.kind();
  if (const auto* r = std::get_if<RectShape>(&profile.shape)) {
    out["a"] = rational_to_json(r->a);
    out["b"] = rational_to_json(r->b);
    out["h"] = rational_to_json(r->height);
  } else if (const auto* t = std::get_if<TriangleShape>(&profile.shape)) {
    out["a"] = rational_to_json(t->a);
    out["b"] = rational_to_json(t->b);
    out["dir"] = t->dir == Slope::kRise ? "rise" : "fall";
    out["slope"] = rational_to_json(t->slope);
  } else if (const auto* p = std::get_if<PiecewiseShape>(&profile.shape)) {
    out["pts"] = json::array();
    for (const auto& [x, y] : p->points) out["pts"].push_back({rational_to_json(x), rational_to_json(y)});
  }
  out["cost"] = rational_to_json(profile.cost);
  if (profile.prov) out["prov"] = {{"job", profile.prov->job}, {"index", profile.prov->index}};
  return out;
}

}  // namespace

CapCoverInstance parse_capcover(std::string_view document) {
  json doc = parse_document(document);
  if (!doc.is_object()) throw InputError("CapCover document must be an object");
  if (!doc.contains("points") || !doc["points"].is_array()) throw InputError("points: array required");
  if (!doc.contains("profiles") || !doc["profiles"].is_array()) throw InputError("profiles: array required");
  CapCoverInstance inst;
  for (size_t p = 0; p < doc["points"].size(); ++p) {
    const json& entry = doc["points"][p];
    const std::string where = "points[" + std::to_string(p) + "]";
    if (!entry.is_object() || !entry.contains("x") || !entry.contains("demand"))
      throw InputError(where + ": {\"x\", \"demand\"} required");
    DemandPoint point{rational_from_json(entry["x"], where + ".x"), rational_from_json(entry["demand"], where + ".demand")};
    if (point.demand < 0) throw InputError(where + ".demand must be >= 0");
    if (point.demand > 0) inst.points.push_back(std::move(point));  // zero demand is vacuous
  }
  for (size_t z = 0; z < doc["profiles"].size(); ++z) inst.profiles.push_back(profile_from_json(doc["profiles"][z], z));
  return inst;
}

std::string to_json(const CapCoverInstance& inst) {
  json doc;
  doc["points"] = json::array();
  for (const auto& point : inst.points)
    doc["points"].push_back({{"x", rational_to_json(point.x)}, {"demand", rational_to_json(point.demand)}});
  doc["profiles"] = json::array();
  for (const auto& profile : inst.profiles) doc["profiles"].push_back(profile_to_json(profile));
  return doc.dump(2);
}

bool verify_capcover(const CapCoverInstance& inst, const std::vector<size_t>& selection) {
  for (size_t p = 0; p < inst.points.size(); ++p) {
    Rational total = 0;
    for (size_t z : selection) {
      if (z >= inst.profiles.size()) return false;
      total += inst.capacity(z, p);
    }
    if (total < inst.points[p].demand) return false;
  }
  return true;
}

ExactCapCover exact_capcover(const CapCoverInstance& inst, size_t max_profiles) {
  const size_t n = inst.profiles.size();
  const size_t np = inst.points.size();
  if (n > max_profiles)
    throw InputError("exact_capcover: " + std::to_string(n) + " profiles exceed the cap of " + std::to_string(max_profiles));
  const CapacityTable cap = capacity_table(inst);

  // suffix[k][p]: capacity at p of profiles k..n-1
  std::vector<std::vector<Rational>> suffix(n + 1, std::vector<Rational>(np, 0));
  for (size_t k = n; k-- > 0;) {
    for (size_t p = 0; p < np; ++p) suffix[k][p] = suffix[k + 1][p] + cap[p][k];
  }
  for (size_t p = 0; p < np; ++p) {
    if (suffix[0][p] < inst.points[p].demand)
      throw StageError("oracle", "point " + std::to_string(p) + " cannot be covered even by every profile");
  }

  std::optional<ExactCapCover> best;
  std::vector<size_t> chosen;
  std::vector<Rational> covered(np, 0);

  std::function<void(size_t, const Rational&)> dfs = [&](size_t k, const Rational& cost) {
    if (best && cost >= best->cost) return;
    bool done = true;
    for (size_t p = 0; p < np; ++p) {
      if (covered[p] < inst.points[p].demand) {
        done = false;
        if (covered[p] + suffix[k][p] < inst.points[p].demand) return;
      }
    }
    if (done) {
      best = ExactCapCover{chosen, cost};
      return;
    }
    if (k == n) return;
    chosen.push_back(k);
    for (size_t p = 0; p < np; ++p) covered[p] += cap[p][k];
    dfs(k + 1, cost + inst.profiles[k].cost);
    for (size_t p = 0; p < np; ++p) covered[p] -= cap[p][k];
    chosen.pop_back();
    dfs(k + 1, cost);
  };
  dfs(0, Rational(0));
  return *best;
}

}  // namespace capcover

namespace capcover::kclp {

namespace {

Rational heavy_capacity(const CapacityTable& cap, size_t p, const std::vector<size_t>& heavy) {
  Rational total = 0;
  for (size_t z : heavy) total += cap[p][z];
  return total;
}

// LHS of the KC inequality (p, S) under x.
Rational kc_lhs(const CapacityTable& cap, size_t p, const std::vector<char>& in_heavy, const Rational& residual,
                const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (size_t z = 0; z < x.size(); ++z) {
    if (in_heavy[z] || x[z] == 0) continue;
    lhs += min(cap[p][z], residual) * x[z];
  }
  return lhs;
}

// Most violated KC inequality at p over all S, by enumeration.
std::optional<KcCut> most_violated(const CapacityTable& cap, size_t p, const Rational& demand,
                                   const std::vector<Rational>& x, const Rational& one_minus_tol) {
  std::vector<size_t> relevant;
  for (size_t z = 0; z < x.size(); ++z) {
    if (cap[p][z] > 0) relevant.push_back(z);
  }
  if (relevant.size() > 20) throw InputError("exhaustive separation: more than 20 profiles overlap one point");
  std::optional<KcCut> best;
  Rational best_ratio;
  std::vector<char> in_heavy(x.size(), 0);
  for (unsigned long mask = 0; mask < (1UL << relevant.size()); ++mask) {
    Rational c_s = 0;
    std::vector<size_t> heavy;
    for (size_t k = 0; k < relevant.size(); ++k) {
      in_heavy[relevant[k]] = (mask >> k) & 1UL;
      if (in_heavy[relevant[k]]) {
        c_s += cap[p][relevant[k]];
        heavy.push_back(relevant[k]);
      }
    }
    const Rational residual = demand - c_s;
    if (residual <= 0) continue;
    const Rational ratio = kc_lhs(cap, p, in_heavy, residual, x) / residual;
    if (ratio < one_minus_tol && (!best || ratio < best_ratio)) {
      best = KcCut{p, heavy};
      best_ratio = ratio;
    }
  }
  return best;
}

}  // namespace

Rational kc_constraint(const CapCoverInstance& inst, size_t p, const std::vector<size_t>& heavy,
                       const std::vector<Rational>& x) {
  if (p >= inst.points.size()) throw InputError("kc_constraint: unknown point");
  if (x.size() != inst.profiles.size()) throw InputError("kc_constraint: x has the wrong length");
  Rational c_s = 0;
  std::vector<char> in_heavy(inst.profiles.size(), 0);
  for (size_t z : heavy) {
    c_s += inst.capacity(z, p);
    in_heavy[z] = 1;
  }
  const Rational residual = inst.points[p].demand - c_s;
  if (residual <= 0) throw InputError("kc_constraint: S already covers the demand of point " + std::to_string(p) + " (constraint void)");
  Rational lhs = 0;
  for (size_t z = 0; z < x.size(); ++z) {
    if (!in_heavy[z]) lhs += min(inst.capacity(z, p), residual) * x[z];
  }
  return lhs - residual;
}

FractionalSolution solve_kc_lp(const CapCoverInstance& inst, const Options& options) {
  if (options.beta <= 0) throw InputError("beta must be > 0");
  if (options.tol <= 0) throw InputError("tol must be > 0");

  FractionalSolution out;
  const size_t n = inst.profiles.size();
  const size_t np = inst.points.size();
  out.x.assign(n, 0);
  out.objective = 0;
  if (options.beta < 8)
    out.warnings.push_back("beta = " + to_string(options.beta) + " < 8: the residual rounding guarantee does not apply");
  if (np == 0) return out;

  const CapacityTable cap = capacity_table(inst);
  for (size_t p = 0; p < np; ++p) {
    Rational total = 0;
    for (size_t z = 0; z < n; ++z) total += cap[p][z];
    if (total < inst.points[p].demand)
      throw StageError("lp", "infeasible: point " + std::to_string(p) + " (x = " + to_string(inst.points[p].x) +
                                 ") has demand " + to_string(inst.points[p].demand) + " but total capacity " +
                                 to_string(total));
  }

  using Matrix = Eigen::MatrixXd;
  using Vector = Eigen::VectorXd;
  Vector cost(static_cast<Eigen::Index>(n));
  for (size_t z = 0; z < n; ++z) cost(static_cast<Eigen::Index>(z)) = to_double(inst.profiles[z].cost);
  const Vector upper = Vector::Ones(static_cast<Eigen::Index>(n));

  for (size_t p = 0; p < np; ++p) out.cuts.push_back({p, {}});

  lp::Options<double> lp_options;
  lp_options.tol = std::min(options.tol, 1e-7);
  const Rational one_minus_tol = Rational(1) - snapshot(options.tol, 15);
  const Rational threshold = Rational(1) / options.beta;

  for (out.rounds = 1; out.rounds <= options.max_rounds; ++out.rounds) {
    Matrix A = Matrix::Zero(static_cast<Eigen::Index>(out.cuts.size()), static_cast<Eigen::Index>(n));
    Vector rhs(static_cast<Eigen::Index>(out.cuts.size()));
    for (size_t r = 0; r < out.cuts.size(); ++r) {
      const KcCut& cut = out.cuts[r];
      const Rational residual = inst.points[cut.point].demand - heavy_capacity(cap, cut.point, cut.heavy);
      std::vector<char> in_heavy(n, 0);
      for (size_t z : cut.heavy) in_heavy[z] = 1;
      for (size_t z = 0; z < n; ++z) {
        if (!in_heavy[z]) A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(z)) = to_double(min(cap[cut.point][z], residual));
      }
      rhs(static_cast<Eigen::Index>(r)) = to_double(residual);
    }

    auto result = lp::minimize_covering<double>(A, rhs, cost, upper, lp_options);
    out.pivots += result.pivots;
    if (result.status != lp::Status::kOptimal)
      throw StageError("lp", result.status == lp::Status::kInfeasible ? "simplex reported infeasibility"
                                                                        : "simplex did not reach optimality");

    for (size_t z = 0; z < n; ++z) {
      Rational value = snapshot(result.x(static_cast<Eigen::Index>(z)));
      out.x[z] = std::clamp(value, Rational(0), Rational(1));
    }

    std::vector<size_t> heavy;
    std::vector<char> in_heavy(n, 0);
    for (size_t z = 0; z < n; ++z) {
      if (out.x[z] >= threshold) {
        heavy.push_back(z);
        in_heavy[z] = 1;
      }
    }

    bool added = false;
    bool stalled = false;
    for (size_t p = 0; p < np; ++p) {
      const Rational residual = inst.points[p].demand - heavy_capacity(cap, p, heavy);
      if (residual <= 0) continue;
      if (kc_lhs(cap, p, in_heavy, residual, out.x) >= one_minus_tol * residual) continue;
      KcCut cut{p, heavy};
      if (std::find(out.cuts.begin(), out.cuts.end(), cut) != out.cuts.end()) {
        stalled = true;
        continue;
      }
      out.cuts.push_back(std::move(cut));
      added = true;
    }
    if (options.exhaustive) {
      for (size_t p = 0; p < np; ++p) {
        auto cut = most_violated(cap, p, inst.points[p].demand, out.x, one_minus_tol);
        if (!cut) continue;
        if (std::find(out.cuts.begin(), out.cuts.end(), *cut) != out.cuts.end()) {
          stalled = true;
          continue;
        }
        out.cuts.push_back(std::move(*cut));
        added = true;
      }
    }
    if (!added) {
      if (stalled) throw StageError("lp", "pooled KC cut violated beyond tolerance after re-solve (numerical stall)");
      out.objective = 0;
      for (size_t z = 0; z < n; ++z) out.objective += inst.profiles[z].cost * out.x[z];
      return out;
    }
  }
  throw StageError("lp", "no KC-feasible solution within " + std::to_string(options.max_rounds) + " cut rounds");
}

ResidualInstance select_heavy(const CapCoverInstance& inst, const std::vector<Rational>& x, const Rational& beta) {
  if (x.size() != inst.profiles.size()) throw InputError("select_heavy: x has the wrong length");
  if (beta <= 0) throw InputError("beta must be > 0");
  ResidualInstance res;
  res.beta = beta;
  const Rational threshold = Rational(1) / beta;
  for (size_t z = 0; z < x.size(); ++z) {
    if (x[z] >= threshold) {
      res.heavy.push_back(z);
    } else {
      res.residual_profiles.push_back(z);
      res.scaled_x.push_back(beta * x[z]);
    }
  }
  for (size_t p = 0; p < inst.points.size(); ++p) {
    Rational covered = 0;
    for (size_t z : res.heavy) covered += inst.capacity(z, p);
    res.residual_demand.push_back(max(Rational(0), inst.points[p].demand - covered));
  }
  return res;
}

bool verify_beta_cover(const CapCoverInstance& inst, const ResidualInstance& res, double tol) {
  const Rational slack = Rational(1) - snapshot(tol, 15);
  for (size_t p = 0; p < inst.points.size(); ++p) {
    const Rational& d = res.residual_demand[p];
    if (d <= 0) continue;
    Rational lhs = 0;
    for (size_t k = 0; k < res.residual_profiles.size(); ++k) {
      lhs += min(inst.capacity(res.residual_profiles[k], p), d) * res.scaled_x[k];
    }
    if (lhs < res.beta * d * slack) return false;
  }
  return true;
}

}  // namespace capcover::kclp
