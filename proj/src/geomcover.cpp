#include "capcover/geomcover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "capcover/errors.hpp"
#include "capcover/json_util.hpp"
#include "capcover/simplex.hpp"

namespace capcover::geomcover {

using nlohmann::json;

SetCoverInstance from_lifted(const lift::LiftedInstance& lifted) {
  SetCoverInstance out;
  for (const auto& element : lifted.elements) {
    out.elements.push_back({"q" + std::to_string(element.point) + "_" + std::to_string(element.level),
                            element.requirement, element.point, element.level});
  }
  for (const auto& set : lifted.sets) out.sets.push_back({set.id, set.cost, set.elements, set.profile});
  return out;
}

SetCoverInstance parse_setcover(std::string_view document) {
  json doc = parse_document(document);
  if (!doc.is_object() || !doc.contains("elements") || !doc["elements"].is_array() || !doc.contains("sets") ||
      !doc["sets"].is_array())
    throw InputError("SetCover document needs \"elements\" and \"sets\" arrays");
  SetCoverInstance inst;
  std::map<std::string, size_t> index;
  for (size_t e = 0; e < doc["elements"].size(); ++e) {
    const json& entry = doc["elements"][e];
    const std::string where = "elements[" + std::to_string(e) + "]";
    if (!entry.is_object() || !entry.contains("id") || !entry.contains("req") || !entry["req"].is_number_integer())
      throw InputError(where + ": {\"id\", \"req\": int} required");
    SetCoverInstance::Element element;
    element.id = entry["id"].is_string() ? entry["id"].get<std::string>() : entry["id"].dump();
    element.req = entry["req"].get<long>();
    if (element.req < 1) throw InputError(where + ".req must be >= 1");
    if (entry.contains("point") && entry["point"].is_number_integer()) element.point = entry["point"].get<size_t>();
    if (entry.contains("level") && entry["level"].is_number_integer()) element.level = entry["level"].get<int>();
    if (!index.emplace(element.id, e).second) throw InputError(where + ".id: duplicate element id");
    inst.elements.push_back(std::move(element));
  }
  for (size_t s = 0; s < doc["sets"].size(); ++s) {
    const json& entry = doc["sets"][s];
    const std::string where = "sets[" + std::to_string(s) + "]";
    if (!entry.is_object() || !entry.contains("id") || !entry.contains("cost") || !entry.contains("covers") ||
        !entry["covers"].is_array())
      throw InputError(where + ": {\"id\", \"cost\", \"covers\": [...]} required");
    SetCoverInstance::Set set;
    set.id = entry["id"].is_string() ? entry["id"].get<std::string>() : entry["id"].dump();
    set.cost = rational_from_json(entry["cost"], where + ".cost");
    if (set.cost < 0) throw InputError(where + ".cost must be >= 0");
    std::set<size_t> covers;
    for (const auto& id : entry["covers"]) {
      auto it = index.find(id.is_string() ? id.get<std::string>() : id.dump());
      if (it == index.end()) throw InputError(where + ".covers: unknown element " + id.dump());
      covers.insert(it->second);
    }
    set.covers.assign(covers.begin(), covers.end());
    if (entry.contains("profile") && entry["profile"].is_number_integer()) set.profile = entry["profile"].get<size_t>();
    inst.sets.push_back(std::move(set));
  }
  return inst;
}

std::string to_json(const SetCoverInstance& inst) {
  json doc;
  doc["elements"] = json::array();
  for (const auto& element : inst.elements) {
    json entry{{"id", element.id}, {"req", element.req}};
    if (element.point) entry["point"] = *element.point;
    if (element.level) entry["level"] = *element.level;
    doc["elements"].push_back(entry);
  }
  doc["sets"] = json::array();
  for (const auto& set : inst.sets) {
    json covers = json::array();
    for (size_t e : set.covers) covers.push_back(inst.elements[e].id);
    json entry{{"id", set.id}, {"cost", rational_to_json(set.cost)}, {"covers", covers}};
    if (set.profile) entry["profile"] = *set.profile;
    doc["sets"].push_back(entry);
  }
  return doc.dump(2);
}

std::vector<size_t> uncoverable_elements(const SetCoverInstance& inst) {
  std::vector<long> degree(inst.elements.size(), 0);
  for (const auto& set : inst.sets) {
    for (size_t e : set.covers) ++degree[e];
  }
  std::vector<size_t> out;
  for (size_t e = 0; e < inst.elements.size(); ++e) {
    if (degree[e] < inst.elements[e].req) out.push_back(e);
  }
  return out;
}

bool is_feasible(const SetCoverInstance& inst, const Cover& cover) {
  std::vector<long> hits(inst.elements.size(), 0);
  std::set<size_t> seen;
  for (size_t s : cover.sets) {
    if (s >= inst.sets.size() || !seen.insert(s).second) return false;
    for (size_t e : inst.sets[s].covers) ++hits[e];
  }
  for (size_t e = 0; e < inst.elements.size(); ++e) {
    if (hits[e] < inst.elements[e].req) return false;
  }
  return true;
}

std::string to_json(const SetCoverInstance& inst, const Cover& cover) {
  json ids = json::array();
  for (size_t s : cover.sets) ids.push_back(inst.sets[s].id);
  return json{{"sets", ids}, {"cost", rational_report(cover.cost)}, {"feasible", is_feasible(inst, cover)}}.dump(2);
}

namespace {

void require_feasible(const SetCoverInstance& inst, const char* stage) {
  auto short_elements = uncoverable_elements(inst);
  if (!short_elements.empty())
    throw StageError(stage, "infeasible: element '" + inst.elements[short_elements.front()].id + "' needs " +
                                std::to_string(inst.elements[short_elements.front()].req) + " sets");
}

Cover make_cover(const SetCoverInstance& inst, std::vector<size_t> sets) {
  std::sort(sets.begin(), sets.end());
  Cover cover{std::move(sets), 0};
  for (size_t s : cover.sets) cover.cost += inst.sets[s].cost;
  return cover;
}

}  // namespace

Cover greedy_multicover(const SetCoverInstance& inst) {
  require_feasible(inst, "round");
  std::vector<long> residual(inst.elements.size());
  for (size_t e = 0; e < inst.elements.size(); ++e) residual[e] = inst.elements[e].req;
  std::vector<char> taken(inst.sets.size(), 0);
  std::vector<size_t> chosen;

  auto remaining = [&] { return std::any_of(residual.begin(), residual.end(), [](long r) { return r > 0; }); };
  while (remaining()) {
    std::optional<size_t> best;
    Rational best_density;
    for (size_t s = 0; s < inst.sets.size(); ++s) {
      if (taken[s]) continue;
      long gain = 0;
      for (size_t e : inst.sets[s].covers) gain += residual[e] > 0 ? 1 : 0;
      if (gain == 0) continue;
      Rational density = inst.sets[s].cost / gain;
      bool better = !best || density < best_density;
      if (best && density == best_density) {
        const auto& incumbent = inst.sets[*best];
        better = inst.sets[s].cost < incumbent.cost ||
                 (inst.sets[s].cost == incumbent.cost && inst.sets[s].id < incumbent.id);
      }
      if (better) {
        best = s;
        best_density = density;
      }
    }
    if (!best) throw StageError("round", "greedy ran out of useful sets");
    taken[*best] = 1;
    chosen.push_back(*best);
    for (size_t e : inst.sets[*best].covers) residual[e] = std::max(0L, residual[e] - 1);
  }
  return make_cover(inst, std::move(chosen));
}

namespace {

// LP relaxation over the free sets with the residual requirements; +inf when infeasible.
double residual_lp_bound(const SetCoverInstance& inst, const std::vector<char>& decided, const std::vector<long>& need) {
  std::vector<size_t> free_sets;
  for (size_t s = 0; s < inst.sets.size(); ++s) {
    if (!decided[s]) free_sets.push_back(s);
  }
  std::vector<size_t> rows;
  for (size_t e = 0; e < need.size(); ++e) {
    if (need[e] > 0) rows.push_back(e);
  }
  if (rows.empty()) return 0;
  if (free_sets.empty()) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(free_sets.size()));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows.size()));
  Eigen::VectorXd cost(static_cast<Eigen::Index>(free_sets.size()));
  std::vector<long> row_of(need.size(), -1);
  for (size_t r = 0; r < rows.size(); ++r) {
    row_of[rows[r]] = static_cast<long>(r);
    rhs(static_cast<Eigen::Index>(r)) = static_cast<double>(need[rows[r]]);
  }
  for (size_t k = 0; k < free_sets.size(); ++k) {
    cost(static_cast<Eigen::Index>(k)) = to_double(inst.sets[free_sets[k]].cost);
    for (size_t e : inst.sets[free_sets[k]].covers) {
      if (row_of[e] >= 0) A(row_of[e], static_cast<Eigen::Index>(k)) = 1;
    }
  }
  auto result = lp::minimize_covering<double>(A, rhs, cost, Eigen::VectorXd::Ones(cost.size()));
  if (result.status != lp::Status::kOptimal) return std::numeric_limits<double>::infinity();
  return result.objective;
}

}  // namespace

Cover exact_multicover(const SetCoverInstance& inst, size_t max_sets) {
  if (inst.sets.size() > max_sets)
    throw InputError("exact_multicover: " + std::to_string(inst.sets.size()) + " sets exceed the cap of " +
                     std::to_string(max_sets));
  require_feasible(inst, "oracle");

  const size_t n = inst.sets.size();
  Cover incumbent = greedy_multicover(inst);
  std::vector<size_t> chosen;
  std::vector<char> decided(n, 0);
  std::vector<long> need(inst.elements.size());
  for (size_t e = 0; e < need.size(); ++e) need[e] = inst.elements[e].req;
  // available[e]: undecided sets still able to cover e
  std::vector<long> available(inst.elements.size(), 0);
  for (const auto& set : inst.sets) {
    for (size_t e : set.covers) ++available[e];
  }

  std::function<void(size_t, const Rational&)> dfs = [&](size_t k, const Rational& cost) {
    if (cost >= incumbent.cost) return;
    bool done = true;
    for (size_t e = 0; e < need.size(); ++e) {
      if (need[e] > 0) {
        done = false;
        if (available[e] < need[e]) return;
      }
    }
    if (done) {
      incumbent = make_cover(inst, chosen);
      return;
    }
    if (k == n) return;
    if (n - k >= 6) {
      double bound = residual_lp_bound(inst, decided, need);
      if (to_double(cost) + bound >= to_double(incumbent.cost) - 1e-9) return;
    }

    decided[k] = 1;
    for (size_t e : inst.sets[k].covers) --available[e];
    // take k
    chosen.push_back(k);
    for (size_t e : inst.sets[k].covers) --need[e];
    dfs(k + 1, cost + inst.sets[k].cost);
    for (size_t e : inst.sets[k].covers) ++need[e];
    chosen.pop_back();
    // skip k
    dfs(k + 1, cost);
    for (size_t e : inst.sets[k].covers) ++available[e];
    decided[k] = 0;
  };
  dfs(0, Rational(0));
  return incumbent;
}

LpValue setcover_lp(const SetCoverInstance& inst) {
  require_feasible(inst, "lp");
  LpValue out;
  out.x.assign(inst.sets.size(), 0.0);
  out.value = 0;
  if (inst.elements.empty() || inst.sets.empty()) return out;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(inst.elements.size()),
                                            static_cast<Eigen::Index>(inst.sets.size()));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(inst.elements.size()));
  Eigen::VectorXd cost(static_cast<Eigen::Index>(inst.sets.size()));
  for (size_t e = 0; e < inst.elements.size(); ++e) rhs(static_cast<Eigen::Index>(e)) = static_cast<double>(inst.elements[e].req);
  for (size_t s = 0; s < inst.sets.size(); ++s) {
    cost(static_cast<Eigen::Index>(s)) = to_double(inst.sets[s].cost);
    for (size_t e : inst.sets[s].covers) A(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(s)) = 1;
  }
  auto result = lp::minimize_covering<double>(A, rhs, cost, Eigen::VectorXd::Ones(cost.size()));
  if (result.status != lp::Status::kOptimal) throw StageError("lp", "set cover LP did not reach optimality");
  for (size_t s = 0; s < inst.sets.size(); ++s) out.x[s] = result.x(static_cast<Eigen::Index>(s));
  out.value = snapshot(result.objective);
  return out;
}

Rounding parse_rounding(std::string_view name) {
  if (name == "greedy") return Rounding::kGreedy;
  if (name == "exact") return Rounding::kExact;
  if (name == "auto") return Rounding::kAuto;
  throw InputError("rounding must be greedy|exact|auto, got '" + std::string(name) + "'");
}

Cover round_cover(const SetCoverInstance& inst, Rounding mode) {
  switch (mode) {
    case Rounding::kGreedy:
      return greedy_multicover(inst);
    case Rounding::kExact:
      return exact_multicover(inst);
    case Rounding::kAuto:
      return inst.sets.size() <= kDefaultExactCap ? exact_multicover(inst) : greedy_multicover(inst);
  }
  return greedy_multicover(inst);
}

// ---------------------------------------------------------------------------
// Envelope

std::optional<size_t> envelope_owner(const std::vector<Profile>& objects, const Rational& x) {
  std::optional<size_t> owner;
  Rational best = 0;
  for (size_t k = 0; k < objects.size(); ++k) {
    if (x < objects[k].left() || x > objects[k].right()) continue;
    Rational value = objects[k].capacity(x);
    if (value <= 0) continue;
    if (!owner || value > best || (value == best && objects[k].id < objects[*owner].id)) {
      owner = k;
      best = value;
    }
  }
  return owner;
}

EnvelopeReport upper_envelope(const std::vector<Profile>& objects, int order) {
  EnvelopeReport report;
  report.objects = objects.size();
  report.order = order;
  if (objects.empty()) return report;

  std::vector<std::vector<Segment>> segments;
  std::set<Rational> xs;
  for (const auto& object : objects) {
    segments.push_back(object.segments());
    for (const auto& s : segments.back()) {
      xs.insert(s.x0);
      xs.insert(s.x1);
    }
  }
  for (size_t a = 0; a < segments.size(); ++a) {
    for (size_t b = a + 1; b < segments.size(); ++b) {
      for (const auto& sa : segments[a]) {
        for (const auto& sb : segments[b]) {
          Rational lo = max(sa.x0, sb.x0);
          Rational hi = min(sa.x1, sb.x1);
          if (hi <= lo) continue;
          // difference is linear on [lo, hi]; record its root if inside
          Rational d_lo = sa.at(lo) - sb.at(lo);
          Rational d_hi = sa.at(hi) - sb.at(hi);
          if ((d_lo < 0 && d_hi > 0) || (d_lo > 0 && d_hi < 0)) xs.insert(lo + (hi - lo) * d_lo / (d_lo - d_hi));
        }
      }
    }
  }

  // Elementary pieces: each breakpoint, then the open gap to the next one.
  struct Piece {
    std::optional<size_t> owner;
    Rational from, to;
  };
  std::vector<Piece> pieces;
  std::vector<Rational> grid(xs.begin(), xs.end());
  for (size_t i = 0; i < grid.size(); ++i) {
    pieces.push_back({envelope_owner(objects, grid[i]), grid[i], grid[i]});
    if (i + 1 < grid.size()) {
      Rational mid = (grid[i] + grid[i + 1]) / 2;
      pieces.push_back({envelope_owner(objects, mid), grid[i], grid[i + 1]});
    }
  }

  for (const auto& piece : pieces) {
    if (!piece.owner) continue;
    const std::string& id = objects[*piece.owner].id;
    if (!report.edges.empty() && report.edges.back().object == id && report.edges.back().to == piece.from) {
      report.edges.back().to = piece.to;
    } else {
      report.edges.push_back({id, piece.from, piece.to});
    }
  }
  // A lone breakpoint owned by one object between two pieces of another is a point contact; skip
  // zero-width edges so the sequence records only pieces of positive length.
  std::vector<EnvelopeReport::Edge> merged;
  for (const auto& edge : report.edges) {
    if (edge.from == edge.to) continue;
    if (!merged.empty() && merged.back().object == edge.object && merged.back().to == edge.from) {
      merged.back().to = edge.to;
    } else {
      merged.push_back(edge);
    }
  }
  report.edges = std::move(merged);
  for (const auto& edge : report.edges) report.sequence.push_back(edge.object);
  report.violation = ds_order_check(report.sequence, order);
  report.longest_alternation = longest_alternation(report.sequence);
  return report;
}

namespace {

// Greedy alternation a, b, a, ... starting with a; returns the chosen indices.
std::vector<size_t> alternation(const std::vector<std::string>& sequence, const std::string& a, const std::string& b,
                                size_t stop_at) {
  std::vector<size_t> picked;
  for (size_t i = 0; i < sequence.size() && picked.size() < stop_at; ++i) {
    const std::string& want = picked.size() % 2 == 0 ? a : b;
    if (sequence[i] == want) picked.push_back(i);
  }
  return picked;
}

}  // namespace

std::optional<std::vector<size_t>> ds_order_check(const std::vector<std::string>& sequence, int order) {
  const size_t target = static_cast<size_t>(order) + 2;
  std::set<std::string> symbols(sequence.begin(), sequence.end());
  for (const auto& a : symbols) {
    for (const auto& b : symbols) {
      if (a == b) continue;
      auto picked = alternation(sequence, a, b, target);
      if (picked.size() >= target) return picked;
    }
  }
  return std::nullopt;
}

size_t longest_alternation(const std::vector<std::string>& sequence) {
  size_t best = sequence.empty() ? 0 : 1;
  std::set<std::string> symbols(sequence.begin(), sequence.end());
  for (const auto& a : symbols) {
    for (const auto& b : symbols) {
      if (a != b) best = std::max(best, alternation(sequence, a, b, sequence.size()).size());
    }
  }
  return best;
}

std::string to_json(const EnvelopeReport& report) {
  json edges = json::array();
  for (const auto& edge : report.edges)
    edges.push_back({{"object", edge.object}, {"from", rational_to_json(edge.from)}, {"to", rational_to_json(edge.to)}});
  json doc{{"edges", edges},
           {"count", report.edges.size()},
           {"ds_order", report.order},
           {"ds_order_ok", report.ds_order_ok()},
           {"objects", report.objects},
           {"longest_alternation", report.longest_alternation}};
  if (report.objects > 0)
    doc["edges_per_object"] = rational_report(Rational(static_cast<long>(report.edges.size()), static_cast<long>(report.objects)));
  if (report.violation) doc["violation"] = *report.violation;
  return doc.dump(2);
}

}  // namespace capcover::geomcover
