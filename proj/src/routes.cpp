#include "hmwtpp/routes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace hmwtpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double transition_time(const Edge& e) {
  const EdgeWeight* w = e.find(kTimeCost);
  return w ? w->transition : 0.0;
}

const Edge& edge_between(const MultiGraph& g, std::size_t w, std::size_t a, std::size_t b) {
  const auto e = g.find_edge(a, b, w);
  if (!e) {
    throw PlanError("worker '" + g.workers()[w].id + "' has no edge " + g.vertices()[a].label + " -> " +
                    g.vertices()[b].label);
  }
  return g.edges()[*e];
}

// Forward simulation of one route: completion times with the whole wait at
// departure, cumulative energy.
void simulate(WorkerRoute& r, const MultiGraph& g, std::size_t w) {
  r.finish.clear();
  r.energy.clear();
  if (r.route.empty()) return;
  double t = r.wait, e = 0.0;
  r.finish.push_back(t);
  r.energy.push_back(e);
  for (std::size_t k = 1; k < r.route.size(); ++k) {
    const Edge& edge = edge_between(g, w, r.route[k - 1], r.route[k]);
    t += edge.weight(kTimeCost);
    e += edge.weight(kEnergyCost);
    r.finish.push_back(t);
    r.energy.push_back(e);
  }
}

double team_objective(const Plan& p) {
  double obj = 0.0;
  for (const auto& r : p.workers) {
    obj = p.objective_kind == ObjectiveKind::Mtm ? std::max(obj, r.route_time()) : obj + r.route_time();
  }
  return obj;
}

bool close(double a, double b, double rel = 1e-6) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

// ---- Extraction -----------------------------------------------------------

Plan extract_plan(const std::vector<double>& x, const MultiGraph& g, const MilpModel& m) {
  Plan plan;
  plan.objective_kind = m.options.objective;
  for (std::size_t w = 0; w < g.workers().size(); ++w) {
    WorkerRoute r;
    r.worker = g.workers()[w].id;
    std::map<std::size_t, std::size_t> next;
    std::size_t active_edges = 0;
    for (auto e : g.layer_edges(w)) {
      if (x[m.z[e]] <= 0.5) continue;
      const Edge& edge = g.edges()[e];
      if (!next.emplace(edge.from, edge.to).second) {
        throw PlanError("worker '" + r.worker + "' leaves " + g.vertices()[edge.from].label + " twice");
      }
      ++active_edges;
    }
    if (active_edges > 0) {
      const std::size_t b = g.base_of(w);
      std::vector<char> seen(g.vertices().size(), 0);
      r.route.push_back(b);
      std::size_t v = b;
      do {
        auto it = next.find(v);
        if (it == next.end()) {
          throw PlanError("route of '" + r.worker + "' breaks off at " + g.vertices()[v].label);
        }
        v = it->second;
        if (v != b && seen[v]) throw PlanError("route of '" + r.worker + "' revisits " + g.vertices()[v].label);
        seen[v] = 1;
        r.route.push_back(v);
      } while (v != b);
      if (r.route.size() - 1 != active_edges) {
        throw PlanError("active edges of '" + r.worker + "' contain a subtour");
      }
      r.active = true;
      if (w < m.wp.size() && m.wp[w] != kNone) r.wait = std::max(0.0, x[m.wp[w]]);
    }
    simulate(r, g, w);
    plan.workers.push_back(std::move(r));
  }
  plan.objective = team_objective(plan);
  return plan;
}

void recompute_schedule(Plan& plan, const MultiGraph& g) {
  for (auto& r : plan.workers) {
    const std::size_t w = g.worker_index(r.worker);
    if (w == kNone) throw PlanError("plan names unknown worker '" + r.worker + "'");
    if (!r.active) r.wait = 0.0;
    simulate(r, g, w);
  }
  plan.objective = team_objective(plan);
}

// ---- Validation -----------------------------------------------------------

const char* to_string(Family f) {
  switch (f) {
    case Family::Cycle: return "cycle";
    case Family::Coverage: return "coverage";
    case Family::Compatibility: return "compatibility";
    case Family::Order: return "order";
    case Family::Precedence: return "precedence";
    case Family::TimeWindow: return "time_window";
    case Family::Energy: return "energy";
    case Family::Objective: return "objective";
  }
  return "unknown";
}

bool ValidationReport::failed(Family f) const {
  return std::any_of(findings.begin(), findings.end(), [&](const Finding& x) { return x.family == f; });
}

ValidationReport validate_plan(const Plan& plan, const ProblemInstance& inst, const MultiGraph& g) {
  ValidationReport rep;
  auto fail = [&](Family f, std::string msg) { rep.findings.push_back({f, std::move(msg)}); };
  const auto& V = g.vertices();

  struct Visit {
    std::size_t worker;
    std::size_t pos;
    double start;
    double finish;
  };
  std::map<Id, std::vector<Visit>> visits;  // by task
  std::vector<double> route_time(g.workers().size(), 0.0);
  std::vector<char> planned(g.workers().size(), 0);
  bool schedule_known = true;

  for (const auto& r : plan.workers) {
    const std::size_t w = g.worker_index(r.worker);
    if (w == kNone) {
      fail(Family::Cycle, "plan names unknown worker '" + r.worker + "'");
      continue;
    }
    if (planned[w]) fail(Family::Cycle, "worker '" + r.worker + "' appears twice");
    planned[w] = 1;
    const Worker& worker = g.workers()[w];
    if (r.wait < 0.0) fail(Family::Cycle, "negative wait for '" + r.worker + "'");
    if (r.wait > 0.0 && !inst.waiting_points) fail(Family::Objective, "wait without waiting points for '" + r.worker + "'");
    if (!r.active) {
      if (!r.route.empty()) fail(Family::Cycle, "inactive worker '" + r.worker + "' has a route");
      if (r.wait > 0.0) fail(Family::Cycle, "inactive worker '" + r.worker + "' waits");
      continue;
    }
    const std::size_t b = g.base_of(w);
    if (r.route.size() < 3 || r.route.front() != b || r.route.back() != b) {
      fail(Family::Cycle, "route of '" + r.worker + "' is not a cycle through its base");
      schedule_known = false;
      continue;
    }
    std::set<std::size_t> seen;
    bool ok = true;
    for (std::size_t k = 1; k + 1 < r.route.size(); ++k) {
      const std::size_t v = r.route[k];
      if (v >= V.size() || V[v].is_base()) {
        fail(Family::Cycle, "route of '" + r.worker + "' passes through a base mid-route");
        ok = false;
        continue;
      }
      if (!seen.insert(v).second) {
        fail(Family::Cycle, "route of '" + r.worker + "' visits " + V[v].label + " twice");
        ok = false;
      }
      if (!worker.compatibility.contains(V[v].approach)) {
        fail(Family::Compatibility, "'" + r.worker + "' cannot perform " + V[v].label);
        ok = false;
      }
      visits[V[v].approach.task].push_back({w, k, kNaN, kNaN});
    }
    if (!ok) {
      schedule_known = false;
      continue;
    }

    // Own forward simulation.
    double t = r.wait, e = 0.0;
    bool edges_ok = true;
    for (std::size_t k = 1; k < r.route.size(); ++k) {
      const auto ei = g.find_edge(r.route[k - 1], r.route[k], w);
      if (!ei) {
        fail(Family::Cycle, "no edge " + V[r.route[k - 1]].label + " -> " + V[r.route[k]].label + " for '" +
                                r.worker + "'");
        edges_ok = false;
        break;
      }
      const Edge& edge = g.edges()[*ei];
      const double start = t + transition_time(edge);
      t += edge.weight(kTimeCost);
      e += edge.weight(kEnergyCost);
      if (k + 1 < r.route.size()) {
        for (auto& vis : visits[V[r.route[k]].approach.task]) {
          if (vis.worker == w && vis.pos == k) {
            vis.start = start;
            vis.finish = t;
          }
        }
      }
      if (k < r.finish.size() && !close(r.finish[k], t)) {
        fail(Family::Objective, "schedule of '" + r.worker + "' at " + V[r.route[k]].label + " says " +
                                    std::to_string(r.finish[k]) + ", simulation gives " + std::to_string(t));
      }
    }
    if (!edges_ok) {
      schedule_known = false;
      continue;
    }
    route_time[w] = t;
    if (inst.energy_budget && e > 1.0 + 1e-7) {
      fail(Family::Energy, "'" + r.worker + "' uses " + std::to_string(e) + " of its energy budget");
    }
  }

  // Coverage: each mandatory task exactly once, optional ones at most once.
  for (const auto& task : inst.tasks) {
    const auto it = visits.find(task.id);
    const std::size_t n = it == visits.end() ? 0 : it->second.size();
    if (n > 1) fail(Family::Coverage, "task covered twice: " + task.id);
    if (n == 0 && task.mandatory) fail(Family::Coverage, "mandatory task not covered: " + task.id);
  }

  // Order pairs by route position within one worker.
  for (const auto& o : inst.order) {
    const auto a = visits.find(o.before), b = visits.find(o.after);
    if (a == visits.end() || b == visits.end()) continue;
    for (const auto& va : a->second) {
      for (const auto& vb : b->second) {
        if (va.worker != vb.worker) continue;
        if (o.worker && g.workers()[va.worker].id != *o.worker) continue;
        if (va.pos >= vb.pos) {
          fail(Family::Order, "'" + g.workers()[va.worker].id + "' visits " + o.after + " before " + o.before);
        }
      }
    }
  }

  // Precedence: completion of `before` no later than start of `after`.
  for (const auto& p : inst.precedence) {
    const auto a = visits.find(p.before), b = visits.find(p.after);
    if (a == visits.end() || b == visits.end()) continue;
    if (a->second.size() != 1 || b->second.size() != 1) continue;  // coverage already failed
    const Visit& va = a->second.front();
    const Visit& vb = b->second.front();
    if (std::isnan(va.finish) || std::isnan(vb.start)) continue;
    if (va.finish > vb.start + 1e-6 * std::max(1.0, std::abs(vb.start))) {
      fail(Family::Precedence, p.before + " must complete before " + p.after + " starts");
    }
  }

  for (const auto& tw : inst.windows) {
    const auto it = visits.find(tw.task);
    if (it == visits.end()) continue;
    for (const auto& v : it->second) {
      if (std::isnan(v.start)) continue;
      const double tol = 1e-6 * std::max(1.0, std::abs(tw.latest));
      if (v.start < tw.earliest - tol || v.finish > tw.latest + tol) {
        fail(Family::TimeWindow, tw.task + " served outside [" + std::to_string(tw.earliest) + ", " +
                                     std::to_string(tw.latest) + "]");
      }
    }
  }

  if (schedule_known) {
    double obj = 0.0;
    for (double t : route_time) obj = plan.objective_kind == ObjectiveKind::Mtm ? std::max(obj, t) : obj + t;
    if (!close(obj, plan.objective)) {
      fail(Family::Objective, "objective " + std::to_string(plan.objective) + " but routes give " + std::to_string(obj));
    }
  }
  return rep;
}

// ---- Brute force ----------------------------------------------------------

namespace {

struct BruteForce {
  const ProblemInstance& inst;
  const MultiGraph& g;
  ObjectiveKind kind;

  std::vector<const Task*> tasks;
  // Options per task: (worker, vertex); kNone worker = skipped (optional).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> options;
  std::vector<std::size_t> choice;

  double best = kInf;
  std::optional<Plan> best_plan;

  std::map<Id, std::size_t> task_index;

  void run() {
    for (const auto& t : inst.tasks) {
      task_index[t.id] = tasks.size();
      tasks.push_back(&t);
      std::vector<std::pair<std::size_t, std::size_t>> opts;
      for (std::size_t w = 0; w < g.workers().size(); ++w) {
        for (auto v : g.task_group(t.id)) {
          if (std::binary_search(g.task_vertices(w).begin(), g.task_vertices(w).end(), v)) opts.push_back({w, v});
        }
      }
      if (!t.mandatory) opts.push_back({kNone, kNone});
      if (opts.empty()) return;  // mandatory task nobody can do
      options.push_back(std::move(opts));
    }
    choice.assign(tasks.size(), 0);
    assign(0);
  }

  void assign(std::size_t i) {
    if (i == tasks.size()) {
      evaluate_assignment();
      return;
    }
    for (std::size_t k = 0; k < options[i].size(); ++k) {
      choice[i] = k;
      assign(i + 1);
    }
  }

  void evaluate_assignment() {
    const std::size_t nw = g.workers().size();
    std::vector<std::vector<std::size_t>> per_worker(nw);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const auto [w, v] = options[i][choice[i]];
      if (w != kNone) per_worker[w].push_back(v);
    }
    for (auto& vs : per_worker) std::sort(vs.begin(), vs.end());
    std::vector<std::vector<std::size_t>> order(nw);
    permute(per_worker, order, 0);
  }

  void permute(std::vector<std::vector<std::size_t>>& sets, std::vector<std::vector<std::size_t>>& order,
               std::size_t w) {
    if (w == sets.size()) {
      evaluate(order);
      return;
    }
    std::vector<std::size_t> perm = sets[w];
    do {
      order[w] = perm;
      permute(sets, order, w + 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  void evaluate(const std::vector<std::vector<std::size_t>>& order) {
    const std::size_t nw = order.size();
    Plan plan;
    plan.objective_kind = kind;
    // Offsets relative to departure.
    struct Stop {
      std::size_t worker;
      std::size_t pos;
      double start;
      double finish;
    };
    std::map<Id, Stop> stop_of;
    std::vector<double> length(nw, 0.0);
    for (std::size_t w = 0; w < nw; ++w) {
      WorkerRoute r;
      r.worker = g.workers()[w].id;
      if (order[w].empty()) {
        plan.workers.push_back(std::move(r));
        continue;
      }
      r.active = true;
      r.route.push_back(g.base_of(w));
      r.route.insert(r.route.end(), order[w].begin(), order[w].end());
      r.route.push_back(g.base_of(w));
      double t = 0.0, e = 0.0;
      for (std::size_t k = 1; k < r.route.size(); ++k) {
        const auto ei = g.find_edge(r.route[k - 1], r.route[k], w);
        if (!ei) return;
        const Edge& edge = g.edges()[*ei];
        const double start = t + transition_time(edge);
        t += edge.weight(kTimeCost);
        e += edge.weight(kEnergyCost);
        if (k + 1 < r.route.size()) stop_of[g.vertices()[r.route[k]].approach.task] = {w, k, start, t};
      }
      if (inst.energy_budget && e > 1.0 + 1e-9) return;
      length[w] = t;
      plan.workers.push_back(std::move(r));
    }

    // Order pairs.
    for (const auto& o : inst.order) {
      auto a = stop_of.find(o.before), b = stop_of.find(o.after);
      if (a == stop_of.end() || b == stop_of.end() || a->second.worker != b->second.worker) continue;
      if (o.worker && g.workers()[a->second.worker].id != *o.worker) continue;
      if (a->second.pos >= b->second.pos) return;
    }

    // Departure waits: least solution of W_b − W_a ≥ finish_a − start_b,
    // W ≥ lower bounds from windows; Bellman-Ford style longest paths.
    std::vector<double> W(nw, 0.0);
    struct Arc {
      std::size_t from, to;
      double c;
    };
    std::vector<Arc> arcs;
    for (const auto& p : inst.precedence) {
      auto a = stop_of.find(p.before), b = stop_of.find(p.after);
      if (a == stop_of.end() || b == stop_of.end()) continue;
      const Stop& sa = a->second;
      const Stop& sb = b->second;
      if (sa.worker == sb.worker) {
        if (sa.finish > sb.start + 1e-9) return;
        continue;
      }
      arcs.push_back({sa.worker, sb.worker, sa.finish - sb.start});
    }
    for (const auto& tw : inst.windows) {
      auto it = stop_of.find(tw.task);
      if (it == stop_of.end()) continue;
      W[it->second.worker] = std::max(W[it->second.worker], tw.earliest - it->second.start);
    }
    if (!inst.waiting_points) {
      for (double v : W) {
        if (v > 1e-9) return;
      }
      for (const auto& a : arcs) {
        if (a.c > 1e-9) return;
      }
    } else {
      for (std::size_t pass = 0; pass <= nw; ++pass) {
        bool changed = false;
        for (const auto& a : arcs) {
          if (W[a.to] < W[a.from] + a.c - 1e-12) {
            W[a.to] = W[a.from] + a.c;
            changed = true;
          }
        }
        if (!changed) break;
        if (pass == nw) return;  // positive cycle: no waits satisfy it
      }
    }
    for (const auto& tw : inst.windows) {
      auto it = stop_of.find(tw.task);
      if (it == stop_of.end()) continue;
      if (W[it->second.worker] + it->second.finish > tw.latest + 1e-9) return;
    }

    double obj = 0.0;
    for (std::size_t w = 0; w < nw; ++w) {
      const double t = order[w].empty() ? 0.0 : W[w] + length[w];
      obj = kind == ObjectiveKind::Mtm ? std::max(obj, t) : obj + t;
    }
    if (!best_plan || obj < best - 1e-9 * std::max(1.0, std::abs(best))) {
      best = obj;
      for (std::size_t w = 0; w < nw; ++w) {
        plan.workers[w].wait = plan.workers[w].active ? W[w] : 0.0;
      }
      recompute_schedule(plan, g);
      best_plan = std::move(plan);
    }
  }
};

}  // namespace

std::optional<Plan> brute_force(const ProblemInstance& inst, const MultiGraph& g, ObjectiveKind objective) {
  if (inst.tasks.size() > kBruteForceMaxTasks || g.workers().size() > kBruteForceMaxWorkers) {
    throw std::invalid_argument("brute force is limited to " + std::to_string(kBruteForceMaxTasks) + " tasks and " +
                                std::to_string(kBruteForceMaxWorkers) + " workers");
  }
  BruteForce bf{inst, g, objective, {}, {}, {}, kInf, std::nullopt, {}};
  bf.run();
  return bf.best_plan;
}

// ---- Re-encoding ------------------------------------------------------------

std::vector<double> plan_to_solution(const Plan& plan, const MultiGraph& g, const MilpModel& m) {
  std::vector<double> x(m.vars.size(), 0.0);
  for (const auto& r : plan.workers) {
    if (!r.active) continue;
    const std::size_t w = g.worker_index(r.worker);
    if (w == kNone) throw PlanError("plan names unknown worker '" + r.worker + "'");
    x[m.yb[w]] = 1.0;
    if (w < m.wp.size() && m.wp[w] != kNone) x[m.wp[w]] = r.wait;
    std::map<std::string, double> acc;
    for (const auto& mu : m.tracked) acc[mu] = mu == kTimeCost ? r.wait : 0.0;
    for (std::size_t k = 1; k < r.route.size(); ++k) {
      const auto e = g.find_edge(r.route[k - 1], r.route[k], w);
      if (!e) throw PlanError("plan uses an edge the graph does not have");
      x[m.z[*e]] = 1.0;
      const std::size_t v = r.route[k];
      for (const auto& mu : m.tracked) acc[mu] += g.edges()[*e].weight(mu);
      if (k + 1 == r.route.size()) break;
      if (m.yc[w][v] != kNone) x[m.yc[w][v]] = 1.0;
      if (!m.p.empty() && m.p[w][v] != kNone) x[m.p[w][v]] = static_cast<double>(k);
      for (const auto& mu : m.tracked) {
        const std::size_t fi = m.f.at(mu)[w][v];
        if (fi != kNone) x[fi] = acc[mu];
      }
    }
  }
  if (m.msigma != kNone) x[m.msigma] = plan.objective_kind == ObjectiveKind::Mtm ? plan.objective : 0.0;
  return x;
}

// ---- Text and GeoJSON -------------------------------------------------------

void write_plan(const Plan& plan, const MultiGraph& g, std::ostream& os) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  os << "hmwtpp-plan 1\n";
  os << "objective " << (plan.objective_kind == ObjectiveKind::Mtm ? "mtm " : "total ") << num(plan.objective) << '\n';
  for (const auto& r : plan.workers) {
    os << "worker " << r.worker << ' ' << (r.active ? "active" : "inactive") << " wait " << num(r.wait) << '\n';
    for (std::size_t k = 0; k < r.route.size(); ++k) {
      os << "  " << g.vertices()[r.route[k]].label;
      if (k < r.finish.size()) os << ' ' << num(r.finish[k]) << ' ' << num(r.energy[k]);
      os << '\n';
    }
    os << "end\n";
  }
}

Plan read_plan(const MultiGraph& g, std::istream& is) {
  std::map<std::string, std::size_t> by_label;
  for (std::size_t v = 0; v < g.vertices().size(); ++v) by_label[g.vertices()[v].label] = v;

  Plan plan;
  std::string line;
  std::size_t lineno = 0;
  auto err = [&](const std::string& what) {
    return PlanError("plan line " + std::to_string(lineno) + ": " + what);
  };
  WorkerRoute* cur = nullptr;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (!header) {
      if (tok != "hmwtpp-plan") throw err("not a plan file");
      header = true;
      continue;
    }
    if (tok == "objective") {
      std::string kind;
      if (!(ls >> kind >> plan.objective)) throw err("malformed objective");
      if (kind != "mtm" && kind != "total") throw err("unknown objective kind '" + kind + "'");
      plan.objective_kind = kind == "mtm" ? ObjectiveKind::Mtm : ObjectiveKind::TotalTime;
    } else if (tok == "worker") {
      if (cur) throw err("worker block not closed");
      WorkerRoute r;
      std::string state, w;
      if (!(ls >> r.worker >> state >> w >> r.wait) || w != "wait") throw err("malformed worker line");
      if (state != "active" && state != "inactive") throw err("worker state must be active or inactive");
      if (g.worker_index(r.worker) == kNone) throw err("unknown worker '" + r.worker + "'");
      r.active = state == "active";
      plan.workers.push_back(std::move(r));
      cur = &plan.workers.back();
    } else if (tok == "end") {
      if (!cur) throw err("'end' without worker");
      cur = nullptr;
    } else {
      if (!cur) throw err("stop outside a worker block");
      auto it = by_label.find(tok);
      if (it == by_label.end()) throw err("unknown vertex '" + tok + "'");
      cur->route.push_back(it->second);
      double f = 0.0, e = 0.0;
      if (ls >> f) {
        ls >> e;
        cur->finish.push_back(f);
        cur->energy.push_back(e);
      }
    }
  }
  if (!header) throw PlanError("empty plan file");
  if (cur) throw PlanError("plan ends inside a worker block");
  return plan;
}

nlohmann::json plan_geojson(const Plan& plan, const MultiGraph& g, const PowerGrid& grid) {
  using nlohmann::json;
  json fc{{"type", "FeatureCollection"}, {"features", json::array()}};
  for (const auto& r : plan.workers) {
    if (!r.active) continue;
    json coords = json::array();
    for (auto v : r.route) {
      const Vertex& vx = g.vertices()[v];
      if (vx.is_base()) {
        if (const GridBase* b = grid.find_base(vx.base)) coords.push_back({b->pos.x, b->pos.y});
      } else if (const Tower* t = grid.find_tower(vx.approach.task)) {
        coords.push_back({t->pos.x, t->pos.y});
      } else if (const Segment* s = grid.find_segment(vx.approach.task)) {
        const Tower* a = grid.find_tower(s->a);
        const Tower* b = grid.find_tower(s->b);
        if (vx.approach.approach == "rev") std::swap(a, b);
        if (a && b) {
          coords.push_back({a->pos.x, a->pos.y});
          coords.push_back({b->pos.x, b->pos.y});
        }
      }
    }
    fc["features"].push_back({{"type", "Feature"},
                              {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
                              {"properties",
                               {{"kind", "route"},
                                {"worker", r.worker},
                                {"time", r.route_time()},
                                {"energy", r.route_energy()},
                                {"wait", r.wait}}}});
  }
  return fc;
}

}  // namespace hmwtpp
