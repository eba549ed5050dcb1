#include "capcover/gsp.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

#include <json.hpp>

#include "capcover/errors.hpp"
#include "capcover/json_util.hpp"

namespace capcover::gsp {

using nlohmann::json;

Rational StepCurve::at(long t) const {
  Rational value = 0;
  for (const auto& [time, v] : breakpoints) {
    if (time > t) break;
    value = v;
  }
  return value;
}

long Instance::horizon() const {
  long v = 0;
  for (const auto& job : jobs) v += job.size;
  return v;
}

void validate(const Instance& inst) {
  if (inst.machines < 1) throw InputError("machines must be >= 1");
  if (inst.jobs.empty()) throw InputError("jobs: list must be non-empty");
  std::set<std::string> ids;
  for (size_t j = 0; j < inst.jobs.size(); ++j) {
    const Job& job = inst.jobs[j];
    const std::string where = "jobs[" + std::to_string(j) + "]";
    if (!ids.insert(job.id).second) throw InputError(where + ".id: duplicate job id '" + job.id + "'");
    if (job.size < 1) throw InputError(where + ".size must be >= 1");
    const auto& bp = job.cost.breakpoints;
    if (bp.empty() || bp.front().first != 0) throw InputError(where + ".cost: first breakpoint must be at time 0");
    for (size_t k = 0; k < bp.size(); ++k) {
      if (bp[k].second < 0) throw InputError(where + ".cost[" + std::to_string(k) + "]: negative cost");
      if (k > 0 && bp[k].first <= bp[k - 1].first)
        throw InputError(where + ".cost[" + std::to_string(k) + "]: times must be strictly increasing");
      if (k > 0 && bp[k].second < bp[k - 1].second)
        throw InputError(where + ".cost[" + std::to_string(k) + "]: non-monotone curve");
    }
  }
}

Instance parse_gsp(std::string_view document) {
  json doc = parse_document(document);
  Instance inst;
  if (!doc.is_object()) throw InputError("GSP document must be an object");
  if (!doc.contains("machines") || !doc["machines"].is_number_integer()) throw InputError("machines: integer required");
  inst.machines = doc["machines"].get<int>();
  if (inst.machines < 1) throw InputError("machines must be >= 1");
  if (!doc.contains("jobs") || !doc["jobs"].is_array()) throw InputError("jobs: array required");
  for (size_t j = 0; j < doc["jobs"].size(); ++j) {
    const json& entry = doc["jobs"][j];
    const std::string where = "jobs[" + std::to_string(j) + "]";
    Job job;
    if (!entry.is_object()) throw InputError(where + ": object required");
    if (!entry.contains("id")) throw InputError(where + ".id: required");
    job.id = entry["id"].is_string() ? entry["id"].get<std::string>() : entry["id"].dump();
    if (!entry.contains("size") || !entry["size"].is_number_integer()) throw InputError(where + ".size: integer required");
    job.size = entry["size"].get<long>();
    if (!entry.contains("cost") || !entry["cost"].is_array()) throw InputError(where + ".cost: array required");
    for (size_t k = 0; k < entry["cost"].size(); ++k) {
      const json& bp = entry["cost"][k];
      const std::string at = where + ".cost[" + std::to_string(k) + "]";
      if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number_integer())
        throw InputError(at + ": expected [integer time, value]");
      long t = bp[0].get<long>();
      if (t < 0) throw InputError(at + ": time must be >= 0");
      job.cost.breakpoints.emplace_back(t, rational_from_json(bp[1], at));
    }
    inst.jobs.push_back(std::move(job));
  }
  validate(inst);
  return inst;
}

std::string to_json(const Instance& inst) {
  json doc;
  doc["machines"] = inst.machines;
  doc["jobs"] = json::array();
  for (const auto& job : inst.jobs) {
    json curve = json::array();
    for (const auto& [t, value] : job.cost.breakpoints) curve.push_back({t, rational_to_json(value)});
    doc["jobs"].push_back({{"id", job.id}, {"size", job.size}, {"cost", curve}});
  }
  return doc.dump(2);
}

std::uint64_t CandidateDeadlines::grid_size(std::uint64_t cap) const {
  std::uint64_t total = 1;
  for (const auto& list : per_job) {
    total *= std::max<std::uint64_t>(1, list.size());
    if (total > cap) return cap + 1;
  }
  return total;
}

namespace {

// Latest time in [0, v] of every distinct value of `level(t)`, in time order.
template <typename LevelFn>
std::vector<std::pair<long, Rational>> latest_per_level(const StepCurve& curve, long v, LevelFn level) {
  std::vector<std::pair<long, Rational>> runs;  // (start time, level)
  for (const auto& [t, value] : curve.breakpoints) {
    if (t > v) break;
    Rational l = level(value);
    if (runs.empty() || runs.back().second != l) runs.emplace_back(t, l);
  }
  std::vector<std::pair<long, Rational>> out;
  for (size_t r = 0; r < runs.size(); ++r) {
    long end = r + 1 < runs.size() ? runs[r + 1].first - 1 : v;
    out.emplace_back(end, runs[r].second);
  }
  return out;
}

}  // namespace

CandidateDeadlines preprocess(const Instance& inst, const Rational& opt_guess) {
  if (opt_guess <= 0) throw InputError("opt_guess must be > 0");
  const long v = inst.horizon();
  const Rational threshold = opt_guess / static_cast<long>(inst.jobs.size());

  CandidateDeadlines out;
  out.opt_guess = opt_guess;
  for (const auto& job : inst.jobs) {
    auto rounded = [&](const Rational& f) { return f <= threshold ? Rational(0) : pow2_ceil(f); };
    auto levels = latest_per_level(job.cost, v, rounded);

    std::vector<Candidate> list;
    if (levels.front().second != 0) list.push_back({0, 0, job.cost.at(0)});  // empty zero-cost trapezoid
    for (const auto& [deadline, level] : levels) {
      if (!list.empty() && deadline <= list.back().deadline) continue;  // positive level ending at time 0
      list.push_back({deadline, level, job.cost.at(deadline)});
    }
    out.per_job.push_back(std::move(list));
  }
  return out;
}

CandidateDeadlines exact_grid(const Instance& inst) {
  const long v = inst.horizon();
  CandidateDeadlines out;
  out.opt_guess = 0;
  for (const auto& job : inst.jobs) {
    auto levels = latest_per_level(job.cost, v, [](const Rational& f) { return f; });
    std::vector<Candidate> list;
    for (const auto& [deadline, value] : levels) {
      if (deadline < job.size) continue;  // cannot finish by then on any machine count
      list.push_back({deadline, value, value});
    }
    out.per_job.push_back(std::move(list));
  }
  return out;
}

long feasibility_slack(const Deadlines& deadlines, const Instance& inst, long b) {
  long lhs = 0;
  long total = 0;
  for (size_t j = 0; j < inst.jobs.size(); ++j) {
    const long p = inst.jobs[j].size;
    lhs += std::min(p, std::max(deadlines[j] - b, 0L));
    total += p;
  }
  return lhs - (total - static_cast<long>(inst.machines) * b);
}

namespace {

void check_deadlines(const Deadlines& deadlines, const Instance& inst) {
  if (deadlines.size() != inst.jobs.size()) throw InputError("expected one deadline per job");
  const long v = inst.horizon();
  for (size_t j = 0; j < deadlines.size(); ++j) {
    if (deadlines[j] < 0 || deadlines[j] > v)
      throw InputError("deadline of job '" + inst.jobs[j].id + "' outside [0, " + std::to_string(v) + "]");
  }
}

}  // namespace

bool check_feasible(const Deadlines& deadlines, const Instance& inst) {
  check_deadlines(deadlines, inst);
  const long v = inst.horizon();
  std::vector<long> points{0, v};
  for (size_t j = 0; j < deadlines.size(); ++j) {
    points.push_back(deadlines[j]);
    if (deadlines[j] >= inst.jobs[j].size) points.push_back(deadlines[j] - inst.jobs[j].size);
  }
  return std::all_of(points.begin(), points.end(),
                     [&](long b) { return feasibility_slack(deadlines, inst, b) >= 0; });
}

namespace {

class Dinic {
 public:
  explicit Dinic(int nodes) : adj_(static_cast<size_t>(nodes)), level_(static_cast<size_t>(nodes)), it_(static_cast<size_t>(nodes)) {}

  int add_edge(int from, int to, long cap) {
    adj_[static_cast<size_t>(from)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap});
    adj_[static_cast<size_t>(to)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0});
    return static_cast<int>(edges_.size()) - 2;
  }

  long flow_on(int edge) const { return edges_[static_cast<size_t>(edge) ^ 1U].cap; }

  long max_flow(int s, int t) {
    long total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (long pushed = dfs(s, t, std::numeric_limits<long>::max())) total += pushed;
    }
    return total;
  }

 private:
  struct Edge {
    int to;
    long cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e : adj_[static_cast<size_t>(u)]) {
        const Edge& edge = edges_[static_cast<size_t>(e)];
        if (edge.cap > 0 && level_[static_cast<size_t>(edge.to)] < 0) {
          level_[static_cast<size_t>(edge.to)] = level_[static_cast<size_t>(u)] + 1;
          q.push(edge.to);
        }
      }
    }
    return level_[static_cast<size_t>(t)] >= 0;
  }

  long dfs(int u, int t, long limit) {
    if (u == t) return limit;
    auto& idx = it_[static_cast<size_t>(u)];
    for (; idx < adj_[static_cast<size_t>(u)].size(); ++idx) {
      int e = adj_[static_cast<size_t>(u)][idx];
      Edge& edge = edges_[static_cast<size_t>(e)];
      if (edge.cap <= 0 || level_[static_cast<size_t>(edge.to)] != level_[static_cast<size_t>(u)] + 1) continue;
      if (long pushed = dfs(edge.to, t, std::min(limit, edge.cap))) {
        edge.cap -= pushed;
        edges_[static_cast<size_t>(e) ^ 1U].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<size_t> it_;
};

}  // namespace

FlowResult max_flow_feasible(const Deadlines& deadlines, const Instance& inst, long horizon_cap) {
  check_deadlines(deadlines, inst);
  const long v = inst.horizon();
  if (v > horizon_cap)
    throw InputError("horizon v = " + std::to_string(v) + " exceeds the flow network cap " +
                     std::to_string(horizon_cap) + "; use check_feasible instead");

  const int n = static_cast<int>(inst.jobs.size());
  const int source = 0;
  const int sink = 1;
  auto job_node = [](int j) { return 2 + j; };
  auto slot_node = [n](long slot) { return 2 + n + static_cast<int>(slot) - 1; };

  Dinic net(2 + n + static_cast<int>(v));
  std::vector<std::vector<std::pair<long, int>>> job_edges(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    net.add_edge(source, job_node(j), inst.jobs[static_cast<size_t>(j)].size);
    for (long slot = 1; slot <= deadlines[static_cast<size_t>(j)]; ++slot) {
      job_edges[static_cast<size_t>(j)].emplace_back(slot, net.add_edge(job_node(j), slot_node(slot), 1));
    }
  }
  for (long slot = 1; slot <= v; ++slot) net.add_edge(slot_node(slot), sink, inst.machines);

  FlowResult result;
  result.value = net.max_flow(source, sink);
  result.feasible = result.value == v;
  result.job_slots.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (const auto& [slot, edge] : job_edges[static_cast<size_t>(j)]) {
      if (net.flow_on(edge) > 0) result.job_slots[static_cast<size_t>(j)].push_back(slot);
    }
  }
  return result;
}

long Schedule::completion(int job) const {
  for (long s = slots; s >= 1; --s) {
    const auto& row = cells[static_cast<size_t>(s - 1)];
    if (std::find(row.begin(), row.end(), job) != row.end()) return s;
  }
  return 0;
}

Schedule extract_schedule(const Deadlines& deadlines, const Instance& inst, long horizon_cap) {
  FlowResult flow = max_flow_feasible(deadlines, inst, horizon_cap);
  if (!flow.feasible)
    throw StageError("extract_schedule", "infeasible deadlines: max flow " + std::to_string(flow.value) + " < " +
                                             std::to_string(inst.horizon()));
  Schedule schedule;
  schedule.slots = inst.horizon();
  schedule.machines = inst.machines;
  schedule.cells.assign(static_cast<size_t>(schedule.slots), std::vector<int>(static_cast<size_t>(inst.machines), -1));
  std::vector<int> used(static_cast<size_t>(schedule.slots), 0);
  for (size_t j = 0; j < flow.job_slots.size(); ++j) {
    for (long slot : flow.job_slots[j]) {
      int& next = used[static_cast<size_t>(slot - 1)];
      schedule.cells[static_cast<size_t>(slot - 1)][static_cast<size_t>(next++)] = static_cast<int>(j);
    }
  }
  return schedule;
}

std::vector<std::string> verify_schedule(const Schedule& schedule, const Instance& inst, const Deadlines& deadlines) {
  std::vector<std::string> problems;
  const auto n = inst.jobs.size();
  if (schedule.machines != inst.machines) problems.push_back("machine count mismatch");
  if (schedule.slots != inst.horizon()) problems.push_back("slot count differs from v");
  if (schedule.cells.size() != static_cast<size_t>(schedule.slots)) {
    problems.push_back("cell table has the wrong number of slots");
    return problems;
  }
  std::vector<long> units(n, 0);
  for (long s = 1; s <= schedule.slots; ++s) {
    const auto& row = schedule.cells[static_cast<size_t>(s - 1)];
    if (row.size() != static_cast<size_t>(schedule.machines)) {
      problems.push_back("slot " + std::to_string(s) + " has the wrong number of machines");
      continue;
    }
    std::set<int> seen;
    for (int cell : row) {
      if (cell < 0) continue;
      if (static_cast<size_t>(cell) >= n) {
        problems.push_back("slot " + std::to_string(s) + " references unknown job");
        continue;
      }
      if (!seen.insert(cell).second)
        problems.push_back("job '" + inst.jobs[static_cast<size_t>(cell)].id + "' on two machines in slot " +
                           std::to_string(s));
      ++units[static_cast<size_t>(cell)];
      if (s > deadlines[static_cast<size_t>(cell)])
        problems.push_back("job '" + inst.jobs[static_cast<size_t>(cell)].id + "' runs after its deadline in slot " +
                           std::to_string(s));
    }
  }
  for (size_t j = 0; j < n; ++j) {
    if (units[j] != inst.jobs[j].size)
      problems.push_back("job '" + inst.jobs[j].id + "' occupies " + std::to_string(units[j]) + " cells, needs " +
                         std::to_string(inst.jobs[j].size));
  }
  return problems;
}

std::string schedule_to_json(const Schedule& schedule, const Instance& inst) {
  json cells = json::array();
  for (long s = 1; s <= schedule.slots; ++s) {
    for (int m = 1; m <= schedule.machines; ++m) {
      int job = schedule.cells[static_cast<size_t>(s - 1)][static_cast<size_t>(m - 1)];
      if (job >= 0) cells.push_back({s, m, inst.jobs[static_cast<size_t>(job)].id});
    }
  }
  return json{{"slots", cells}}.dump();
}

Rational deadline_cost(const Deadlines& deadlines, const Instance& inst) {
  Rational total = 0;
  for (size_t j = 0; j < inst.jobs.size(); ++j) total += inst.jobs[j].cost.at(deadlines[j]);
  return total;
}

OracleResult brute_force_gsp(const Instance& inst, const CandidateDeadlines& candidates, std::uint64_t cap) {
  if (candidates.per_job.size() != inst.jobs.size()) throw InputError("candidate list does not match the job list");
  for (const auto& list : candidates.per_job) {
    if (list.empty()) throw InputError("a job has no candidate deadlines");
  }
  if (candidates.grid_size(cap) > cap)
    throw InputError("candidate grid exceeds the enumeration cap of " + std::to_string(cap));

  const size_t n = inst.jobs.size();
  std::vector<int> choice(n, 0);
  Deadlines deadlines(n);
  std::optional<OracleResult> best;
  while (true) {
    Rational cost = 0;
    for (size_t j = 0; j < n; ++j) {
      const Candidate& c = candidates.per_job[j][static_cast<size_t>(choice[j])];
      deadlines[j] = c.deadline;
      cost += c.original_cost;
    }
    if ((!best || cost < best->cost) && check_feasible(deadlines, inst)) best = OracleResult{deadlines, choice, cost};

    size_t j = 0;
    while (j < n && ++choice[j] == static_cast<int>(candidates.per_job[j].size())) choice[j++] = 0;
    if (j == n) break;
  }
  if (!best) throw StageError("oracle", "no feasible deadline assignment on the candidate grid");
  return *best;
}

}  // namespace capcover::gsp
