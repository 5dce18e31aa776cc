#include "hmwtpp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

namespace hmwtpp {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::NodeLimit: return "node_limit";
    case SolveStatus::IterationCap: return "iteration_cap";
    case SolveStatus::Numerical: return "numerical";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::pair<double, double> row_range(const LinearConstraint& r) {
  switch (r.sense) {
    case Sense::Le: return {-kInf, r.rhs};
    case Sense::Ge: return {r.rhs, kInf};
    case Sense::Eq: return {r.rhs, r.rhs};
  }
  return {-kInf, kInf};
}

void add_lp_row(LpProblem& lp, const LinearConstraint& r) {
  std::vector<std::pair<std::size_t, double>> terms;
  terms.reserve(r.terms.size());
  for (const auto& t : r.terms) terms.push_back({t.var, t.coef});
  const auto [lo, hi] = row_range(r);
  lp.add_row(terms, lo, hi);
}

struct BoundChange {
  std::size_t var;
  double lb;
  double ub;
};

struct Node {
  std::size_t id = 0;
  std::size_t depth = 0;
  double bound = -kInf;
  std::vector<BoundChange> changes;
  std::shared_ptr<const Basis> basis;
  // How this node was created, for pseudocost updates.
  std::size_t branch_var = kNone;
  bool up = false;
  double frac = 0.0;
};

struct Pseudocosts {
  std::vector<double> sum[2];
  std::vector<std::size_t> count[2];
  double total[2] = {0.0, 0.0};
  std::size_t samples[2] = {0, 0};

  explicit Pseudocosts(std::size_t n) {
    for (int d = 0; d < 2; ++d) {
      sum[d].assign(n, 0.0);
      count[d].assign(n, 0);
    }
  }
  void record(std::size_t j, bool up, double gain_per_unit) {
    sum[up][j] += gain_per_unit;
    ++count[up][j];
    total[up] += gain_per_unit;
    ++samples[up];
  }
  double estimate(std::size_t j, bool up) const {
    if (count[up][j]) return sum[up][j] / static_cast<double>(count[up][j]);
    return samples[up] ? total[up] / static_cast<double>(samples[up]) : 1.0;
  }
};

struct NodeOrder {
  // priority_queue pops the "largest": invert so best bound, then deeper,
  // then older comes out first.
  bool operator()(const std::shared_ptr<Node>& a, const std::shared_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    if (a->depth != b->depth) return a->depth < b->depth;
    return a->id > b->id;
  }
};

double prune_tol(double incumbent, double gap) {
  const double scale = std::max(1.0, std::abs(incumbent));
  return std::max(kObjectiveRelTol * scale, gap * scale);
}

}  // namespace

SolveReport solve_milp(const MilpModel& model, const Limits& limits, const BnbHooks& hooks) {
  const auto t0 = Clock::now();
  SolveReport rep;

  LpProblem prob;
  std::vector<double> cost(model.vars.size(), 0.0);
  for (const auto& t : model.objective) cost[t.var] += t.coef;
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    prob.add_col(cost[j], model.vars[j].lb, model.vars[j].ub);
  }
  for (const auto& r : model.rows) add_lp_row(prob, r);

  // Branching tie-break: lexicographic variable name.
  std::vector<std::size_t> name_rank(model.vars.size());
  {
    std::vector<std::size_t> order(model.vars.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return model.vars[a].name < model.vars[b].name; });
    for (std::size_t r = 0; r < order.size(); ++r) name_rank[order[r]] = r;
  }

  Pseudocosts pc(model.vars.size());

  DualSimplex lp(prob);
  if (hooks.warm_start) {
    try {
      lp.load_basis(*hooks.warm_start);
    } catch (const LpError&) {
      // Stale basis; start from slacks.
    }
  }

  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>, NodeOrder> open;
  auto root = std::make_shared<Node>();
  open.push(root);
  std::size_t next_id = 1;

  double incumbent = kInf;
  std::vector<double> best_x;
  std::vector<std::size_t> touched;  // vars whose bounds differ from the root
  const Basis* last_basis = nullptr;
  bool stopped = false;
  bool numerical = false;

  // Until an incumbent exists the up child is processed immediately (a dive);
  // afterwards nodes come strictly from the best-bound queue.
  std::shared_ptr<Node> dive;

  while (!open.empty() || dive) {
    if (seconds_since(t0) > limits.time_limit) {
      rep.status = SolveStatus::TimeLimit;
      stopped = true;
      break;
    }
    if (rep.nodes >= limits.node_limit) {
      rep.status = SolveStatus::NodeLimit;
      stopped = true;
      break;
    }
    std::shared_ptr<Node> node;
    if (dive) {
      node = std::move(dive);
      dive.reset();
    } else {
      node = open.top();
      open.pop();
    }
    if (node->bound >= incumbent - prune_tol(incumbent, limits.gap)) continue;

    for (auto j : touched) lp.set_col_bounds(j, model.vars[j].lb, model.vars[j].ub);
    touched.clear();
    for (const auto& ch : node->changes) {
      lp.set_col_bounds(ch.var, ch.lb, ch.ub);
      touched.push_back(ch.var);
    }
    if (node->basis && node->basis.get() != last_basis) lp.load_basis(*node->basis);

    LpSolution sol = lp.solve();
    ++rep.nodes;

    if (hooks.separator && sol.status == LpStatus::Optimal) {
      for (std::size_t round = 0; round < hooks.separator_rounds; ++round) {
        if (sol.objective >= incumbent - prune_tol(incumbent, limits.gap)) break;
        auto cuts = hooks.separator(sol.x);
        if (cuts.empty()) break;
        for (const auto& c : cuts) {
          add_lp_row(prob, c);
          if (hooks.cuts_out) hooks.cuts_out->push_back(c);
        }
        rep.cuts_added += cuts.size();
        lp.sync_rows();
        sol = lp.solve();
        if (sol.status != LpStatus::Optimal) break;
      }
    }

    if (node->branch_var != kNone && sol.status == LpStatus::Optimal) {
      const double step = node->up ? 1.0 - node->frac : node->frac;
      const double gain = std::max(0.0, sol.objective - node->bound);
      pc.record(node->branch_var, node->up, gain / std::max(step, 1e-6));
    }

    if (node == root && hooks.root_basis_out && sol.status == LpStatus::Optimal) {
      *hooks.root_basis_out = std::make_shared<const Basis>(lp.basis());
    }
    if (sol.status == LpStatus::Infeasible) continue;
    if (sol.status != LpStatus::Optimal) {
      numerical = true;
      spdlog::warn("node {} LP stopped: {}", node->id, to_string(sol.status));
      continue;
    }
    if (sol.objective >= incumbent - prune_tol(incumbent, limits.gap)) continue;

    // Binaries before general integers; within a class the best score wins,
    // ties by variable name.
    std::size_t branch = kNone;
    double best_score = 0.0;
    for (int pass = 0; pass < 2 && branch == kNone; ++pass) {
      const VarType want = pass == 0 ? VarType::Binary : VarType::Integer;
      for (std::size_t j = 0; j < model.vars.size(); ++j) {
        if (model.vars[j].type != want) continue;
        const double v = sol.x[j];
        const double f = v - std::floor(v);
        const double frac = std::min(f, 1.0 - f);
        if (frac <= kIntegralityTol) continue;
        double score = frac;
        if (limits.branching == Branching::Pseudocost) {
          score = std::max(pc.estimate(j, false) * f, 1e-6) * std::max(pc.estimate(j, true) * (1.0 - f), 1e-6);
        }
        const double tie = 1e-12 * std::max(1.0, std::abs(best_score));
        if (branch == kNone || score > best_score + tie ||
            (std::abs(score - best_score) <= tie && name_rank[j] < name_rank[branch])) {
          branch = j;
          best_score = score;
        }
      }
    }

    if (branch == kNone) {
      incumbent = sol.objective;
      best_x = sol.x;
      for (std::size_t j = 0; j < model.vars.size(); ++j) {
        if (model.vars[j].is_integral()) best_x[j] = std::round(best_x[j]);
      }
      spdlog::debug("incumbent {:.9g} at node {}", incumbent, rep.nodes);
      continue;
    }

    auto basis = std::make_shared<const Basis>(lp.basis());
    last_basis = basis.get();
    const double v = sol.x[branch];
    const double lb = lp.col_lb(branch), ub = lp.col_ub(branch);
    // Up branch first: it tends to close routes and find incumbents early.
    auto up = std::make_shared<Node>();
    up->id = next_id++;
    up->depth = node->depth + 1;
    up->bound = sol.objective;
    up->changes = node->changes;
    up->changes.push_back({branch, std::ceil(v), ub});
    up->basis = basis;
    up->branch_var = branch;
    up->up = true;
    up->frac = v - std::floor(v);
    auto down = std::make_shared<Node>();
    down->id = next_id++;
    down->depth = node->depth + 1;
    down->bound = sol.objective;
    down->changes = node->changes;
    down->changes.push_back({branch, lb, std::floor(v)});
    down->basis = basis;
    down->branch_var = branch;
    down->frac = v - std::floor(v);
    if (std::isfinite(incumbent)) {
      open.push(up);
    } else {
      dive = up;
    }
    open.push(down);
  }

  rep.lp_iterations = lp.total_iterations();
  rep.has_incumbent = std::isfinite(incumbent);
  if (rep.has_incumbent) {
    rep.x = best_x;
    rep.objective = incumbent;
  }
  double bound = incumbent;
  if (stopped) {
    // Open nodes carry their parents' bounds; the best one is on top.
    if (!open.empty()) bound = std::min(bound, open.top()->bound);
    if (dive) bound = std::min(bound, dive->bound);
  }
  rep.best_bound = rep.has_incumbent || stopped ? bound : kInf;
  if (!stopped) {
    rep.status = rep.has_incumbent ? SolveStatus::Optimal : SolveStatus::Infeasible;
    if (numerical) {
      rep.message = "some node LPs hit the iteration limit";
      if (!rep.has_incumbent) rep.status = SolveStatus::Numerical;
    }
  }
  if (rep.has_incumbent) {
    const double g = (rep.objective - rep.best_bound) / std::max(1.0, std::abs(rep.objective));
    rep.gap = std::max(0.0, std::isfinite(g) ? g : 0.0);
  } else {
    rep.gap = kInf;
  }
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

std::vector<Subtour> separate_subtours(const std::vector<double>& x, const MultiGraph& g,
                                       const MilpModel& m) {
  std::vector<Subtour> out;
  const std::size_t nv = g.vertices().size();
  for (std::size_t w = 0; w < g.workers().size(); ++w) {
    std::vector<std::size_t> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    std::vector<char> touched(nv, 0);
    for (auto e : g.layer_edges(w)) {
      if (x[m.z[e]] <= 0.5) continue;
      const Edge& edge = g.edges()[e];
      touched[edge.from] = touched[edge.to] = 1;
      parent[find(edge.from)] = find(edge.to);
    }
    const std::size_t base_root = find(g.base_of(w));
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t v = 0; v < nv; ++v) {
      if (!touched[v]) continue;
      const std::size_t r = find(v);
      if (touched[g.base_of(w)] && r == base_root) continue;
      if (v == g.base_of(w)) continue;
      comps[r].push_back(v);
    }
    std::vector<Subtour> mine;
    for (auto& [r, vs] : comps) mine.push_back({w, vs});
    std::sort(mine.begin(), mine.end(),
              [](const Subtour& a, const Subtour& b) { return a.vertices < b.vertices; });
    out.insert(out.end(), mine.begin(), mine.end());
  }
  return out;
}

namespace {

// Dense Edmonds-Karp; returns the source side of a minimum cut.
std::vector<char> min_cut_source_side(std::vector<double> cap, std::size_t n, std::size_t s,
                                      std::size_t t, double* value) {
  double flow = 0.0;
  std::vector<std::size_t> prev(n);
  while (true) {
    std::fill(prev.begin(), prev.end(), kNone);
    prev[s] = s;
    std::vector<std::size_t> queue{s};
    for (std::size_t qi = 0; qi < queue.size() && prev[t] == kNone; ++qi) {
      const std::size_t u = queue[qi];
      for (std::size_t v = 0; v < n; ++v) {
        if (prev[v] == kNone && cap[u * n + v] > 1e-9) {
          prev[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (prev[t] == kNone) break;
    double push = kInf;
    for (std::size_t v = t; v != s; v = prev[v]) push = std::min(push, cap[prev[v] * n + v]);
    for (std::size_t v = t; v != s; v = prev[v]) {
      cap[prev[v] * n + v] -= push;
      cap[v * n + prev[v]] += push;
    }
    flow += push;
  }
  if (value) *value = flow;
  std::vector<char> side(n, 0);
  for (std::size_t v = 0; v < n; ++v) side[v] = prev[v] != kNone;
  return side;
}

}  // namespace

std::vector<LinearConstraint> separate_fractional(const std::vector<double>& x, const MultiGraph& g,
                                                  const MilpModel& m, double min_violation) {
  std::vector<LinearConstraint> out;
  std::set<std::vector<std::size_t>> seen;
  const std::size_t nv = g.vertices().size();
  for (std::size_t w = 0; w < g.workers().size(); ++w) {
    // Compact index over the worker's vertices: base first.
    const auto& tv = g.task_vertices(w);
    const std::size_t n = tv.size() + 1;
    if (n < 3) continue;
    std::vector<std::size_t> local(nv, kNone);
    std::vector<std::size_t> global{g.base_of(w)};
    local[g.base_of(w)] = 0;
    for (auto v : tv) {
      local[v] = global.size();
      global.push_back(v);
    }
    std::vector<double> cap(n * n, 0.0), inflow(n, 0.0);
    for (auto e : g.layer_edges(w)) {
      const Edge& edge = g.edges()[e];
      const double z = x[m.z[e]];
      if (z <= 1e-9) continue;
      cap[local[edge.from] * n + local[edge.to]] += z;
      inflow[local[edge.to]] += z;
    }
    std::vector<char> covered(n, 0);
    for (std::size_t s = 1; s < n; ++s) {
      if (covered[s] || inflow[s] < 0.5) continue;
      double value = 0.0;
      const auto side = min_cut_source_side(cap, n, s, 0, &value);
      if (value >= inflow[s] - min_violation) continue;
      std::vector<std::size_t> S;
      for (std::size_t v = 1; v < n; ++v) {
        if (side[v]) {
          S.push_back(global[v]);
          covered[v] = 1;
        }
      }
      if (S.size() < 2) continue;
      std::sort(S.begin(), S.end());
      double inside = 0.0;
      for (std::size_t a = 1; a < n; ++a) {
        if (!side[a]) continue;
        for (std::size_t b = 1; b < n; ++b) {
          if (side[b]) inside += cap[a * n + b];
        }
      }
      if (inside <= static_cast<double>(S.size()) - 1.0 + min_violation) continue;
      std::vector<std::size_t> key{w};
      key.insert(key.end(), S.begin(), S.end());
      if (!seen.insert(key).second) continue;
      out.push_back(make_dfj_cut(g, m, w, S));
    }
  }
  return out;
}

namespace {

std::string cut_key(std::size_t w, const std::vector<std::size_t>& q) {
  std::string k = std::to_string(w) + ":";
  for (auto v : q) k += std::to_string(v) + ",";
  return k;
}

}  // namespace

SolveReport dfj_loop(const MilpModel& model, const MultiGraph& g, const Limits& limits,
                     const DfjOptions& opts, MilpModel* final_model) {
  const auto t0 = Clock::now();
  MilpModel work = model;
  std::set<std::string> seen;
  std::shared_ptr<const Basis> warm;
  std::vector<DfjRound> rounds;
  std::size_t nodes = 0, lp_iters = 0, cuts = 0;

  auto finish = [&](SolveReport rep) {
    rep.rounds = rounds;
    rep.nodes = nodes;
    rep.lp_iterations = lp_iters;
    rep.cuts_added = cuts;
    rep.wall_seconds = seconds_since(t0);
    if (final_model) *final_model = work;
    return rep;
  };

  for (std::size_t it = 1; it <= limits.dfj_iterations; ++it) {
    Limits lim = limits;
    lim.time_limit = limits.time_limit - seconds_since(t0);
    if (lim.time_limit <= 0) {
      SolveReport rep;
      rep.status = SolveStatus::TimeLimit;
      rep.gap = kInf;
      rep.message = "time limit reached between cut rounds";
      return finish(rep);
    }
    BnbHooks hooks;
    hooks.warm_start = warm;
    hooks.root_basis_out = &warm;
    SolveReport rep = solve_milp(work, lim, hooks);
    nodes += rep.nodes;
    lp_iters += rep.lp_iterations;

    DfjRound round;
    round.iteration = it;
    round.objective = rep.objective;
    round.nodes = rep.nodes;
    if (!rep.has_incumbent) {
      rounds.push_back(round);
      return finish(rep);
    }
    const auto comps = separate_subtours(rep.x, g, work);
    round.components = comps.size();
    if (comps.empty()) {
      rounds.push_back(round);
      spdlog::debug("cut loop done after {} rounds, objective {:.9g}", it, rep.objective);
      return finish(rep);
    }
    if (rep.status == SolveStatus::TimeLimit) {
      rounds.push_back(round);
      rep.has_incumbent = false;
      rep.x.clear();
      rep.gap = kInf;
      rep.message = "time limit reached with a subtour incumbent";
      return finish(rep);
    }

    std::size_t added = 0;
    for (const auto& st : comps) {
      const auto& q = st.vertices;
      std::vector<std::vector<std::size_t>> sets;
      if (opts.expand_subsets && q.size() < opts.subset_threshold) {
        const std::size_t full = std::size_t{1} << q.size();
        for (std::size_t mask = 1; mask < full; ++mask) {
          if (__builtin_popcountll(mask) < 2) continue;
          std::vector<std::size_t> s;
          for (std::size_t b = 0; b < q.size(); ++b) {
            if (mask & (std::size_t{1} << b)) s.push_back(q[b]);
          }
          sets.push_back(std::move(s));
        }
      } else {
        sets.push_back(q);
      }
      for (const auto& s : sets) {
        if (!seen.insert(cut_key(st.worker, s)).second) continue;
        work.add_row(make_dfj_cut(g, work, st.worker, s));
        ++added;
      }
    }
    round.cuts = added;
    cuts += added;
    rounds.push_back(round);
    spdlog::debug("round {}: objective {:.9g}, {} subtours, {} cuts", it, rep.objective,
                  comps.size(), added);
    if (added == 0) {
      rep.status = SolveStatus::Numerical;
      rep.has_incumbent = false;
      rep.message = "subtour found but every cut for it is already present";
      return finish(rep);
    }
  }
  SolveReport rep;
  rep.status = SolveStatus::IterationCap;
  rep.gap = kInf;
  rep.message = "cut loop iteration cap exceeded";
  return finish(rep);
}

std::vector<LinearConstraint> reach_cuts(const MultiGraph& g, const MilpModel& m) {
  std::vector<LinearConstraint> out;
  if (m.msigma == kNone || m.options.objective != ObjectiveKind::Mtm) return out;
  const std::size_t nv = g.vertices().size(), nw = g.workers().size();
  // round[w][v]: cheapest closed walk base → v → base in the worker's layer.
  std::vector<std::vector<double>> round(nw, std::vector<double>(nv, kInf));
  for (std::size_t w = 0; w < nw; ++w) {
    auto dijkstra = [&](bool forward) {
      std::vector<double> dist(nv, kInf);
      std::vector<char> done(nv, 0);
      dist[g.base_of(w)] = 0.0;
      for (std::size_t k = 0; k < nv; ++k) {
        std::size_t u = kNone;
        for (std::size_t v = 0; v < nv; ++v) {
          if (!done[v] && std::isfinite(dist[v]) && (u == kNone || dist[v] < dist[u])) u = v;
        }
        if (u == kNone) break;
        done[u] = 1;
        for (auto e : forward ? g.out_edges(w, u) : g.in_edges(w, u)) {
          const Edge& edge = g.edges()[e];
          const std::size_t v = forward ? edge.to : edge.from;
          dist[v] = std::min(dist[v], dist[u] + edge.weight(kTimeCost));
        }
      }
      return dist;
    };
    const auto there = dijkstra(true), back = dijkstra(false);
    for (auto v : g.task_vertices(w)) round[w][v] = there[v] + back[v];
  }
  for (const auto& task : g.instance().tasks) {
    if (!task.mandatory) continue;
    LinearConstraint c;
    c.name = "reach_" + task.id;
    c.family = "reach";
    for (std::size_t w = 0; w < nw; ++w) {
      for (auto v : g.task_group(task.id)) {
        if (m.yc[w][v] == kNone || !std::isfinite(round[w][v]) || round[w][v] <= 0) continue;
        c.terms.push_back({m.yc[w][v], round[w][v]});
      }
    }
    if (c.terms.empty()) continue;
    c.terms.push_back({m.msigma, -1.0});
    out.push_back(std::move(c));
  }
  return out;
}

void tighten_partial_costs(const MultiGraph& g, MilpModel& m) {
  // A route enters each of its vertices once, so a partial cost never exceeds
  // the sum over T|_w of the dearest entering edge (plus the wait).
  std::map<std::string, std::vector<double>> bound;
  for (const auto& [mu, o] : m.big_o) {
    auto& u = bound[mu];
    u.assign(o.size(), 0.0);
    for (std::size_t w = 0; w < o.size(); ++w) {
      for (auto v : g.task_vertices(w)) {
        double dearest = 0.0;
        for (auto e : g.in_edges(w, v)) dearest = std::max(dearest, g.edges()[e].weight(mu));
        u[w] += dearest;
      }
      if (m.wp[w] != kNone && mu == kTimeCost) u[w] += m.wait_cap[w];
      u[w] = std::min(u[w], o[w]);
    }
  }
  auto cap_of = [&](const Variable& v) { return bound.at(v.cost_type)[v.worker]; };
  for (auto& v : m.vars) {
    if (v.kind == VarKind::F) v.ub = std::min(v.ub, cap_of(v));
  }
  for (auto& r : m.rows) {
    const bool chain = r.family == kFamMfeChain, visit = r.family == kFamMfeVisit;
    const bool first = r.family == kFamMfeFirst && r.sense == Sense::Ge;
    if (!chain && !visit && !first) continue;
    const Variable* fv = nullptr;
    for (const auto& t : r.terms) {
      if (m.vars[t.var].kind == VarKind::F) fv = &m.vars[t.var];
    }
    if (!fv) continue;
    const double o = m.big_o.at(fv->cost_type)[fv->worker], u = cap_of(*fv);
    for (auto& t : r.terms) {
      const VarKind k = m.vars[t.var].kind;
      if (chain && k == VarKind::Z) {
        // f_u − f_v + O z ≤ O − Ω   →   f_u − f_v + (U + Ω) z ≤ U
        const double omega = o - r.rhs;
        t.coef = u + omega;
        r.rhs = u;
      } else if (visit && k == VarKind::YC) {
        t.coef = -u;
      } else if (first && k == VarKind::Z) {
        // f_u − W − (Ω + O) z ≥ −O
        const double omega = -t.coef - o;
        t.coef = -(omega + u);
        r.rhs = -u;
      }
    }
  }
}

SolveReport solve(const MilpModel& model, const MultiGraph& g, const Limits& limits,
                  const DfjOptions& opts) {
  // Under the min-max objective the makespan is at least the round trip to
  // whichever vertex serves each task; the relaxation does not see this when
  // it splits a task across workers.
  MilpModel strong = model;
  tighten_partial_costs(g, strong);
  for (auto& c : reach_cuts(g, model)) strong.add_row(std::move(c));
  if (model.options.sec == SecMode::DfjLazy) return dfj_loop(strong, g, limits, opts);
  // MTZ rows alone give weak relaxations; subtour cuts at fractional nodes
  // tighten them without changing the feasible set.
  BnbHooks hooks;
  hooks.separator = [&](const std::vector<double>& x) { return separate_fractional(x, g, strong); };
  return solve_milp(strong, limits, hooks);
}

void write_solution(const MilpModel& m, const std::vector<double>& x, std::ostream& os) {
  char buf[64];
  for (std::size_t j = 0; j < m.vars.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", x[j]);
    os << m.vars[j].name << ' ' << buf << '\n';
  }
}

std::vector<double> read_solution(const MilpModel& m, std::istream& is) {
  std::map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < m.vars.size(); ++j) index[m.vars[j].name] = j;
  std::vector<double> x(m.vars.size(), 0.0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string name;
    double v = 0.0;
    if (!(ls >> name >> v)) throw std::runtime_error("solution line " + std::to_string(lineno) + " malformed");
    auto it = index.find(name);
    if (it == index.end()) throw std::runtime_error("solution names unknown variable '" + name + "'");
    x[it->second] = v;
  }
  return x;
}

void write_report(const SolveReport& r, std::ostream& os) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  os << "status: " << to_string(r.status) << '\n';
  os << "has_incumbent: " << (r.has_incumbent ? "true" : "false") << '\n';
  os << "objective: " << num(r.objective) << '\n';
  os << "best_bound: " << num(r.best_bound) << '\n';
  os << "gap: " << num(r.gap) << '\n';
  os << "nodes: " << r.nodes << '\n';
  os << "cuts_added: " << r.cuts_added << '\n';
  os << "lp_iterations: " << r.lp_iterations << '\n';
  os << "wall_seconds: " << num(r.wall_seconds) << '\n';
  if (!r.message.empty()) os << "message: " << r.message << '\n';
  for (const auto& rd : r.rounds) {
    os << "round: " << rd.iteration << " objective=" << num(rd.objective)
       << " subtours=" << rd.components << " cuts=" << rd.cuts << " nodes=" << rd.nodes << '\n';
  }
}

}  // namespace hmwtpp
