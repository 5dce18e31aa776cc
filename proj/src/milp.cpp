#include "hmwtpp/milp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

namespace hmwtpp {

double LinearConstraint::activity(const std::vector<double>& x) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.coef * x[t.var];
  return s;
}

double LinearConstraint::violation(const std::vector<double>& x) const {
  const double a = activity(x);
  switch (sense) {
    case Sense::Le: return a - rhs;
    case Sense::Ge: return rhs - a;
    case Sense::Eq: return std::abs(a - rhs);
  }
  return 0.0;
}

EncodeOptions EncodeOptions::from_instance(const ProblemInstance& inst, SecMode sec) {
  EncodeOptions o;
  o.sec = sec;
  o.waiting = inst.waiting_points;
  o.energy_budget = inst.energy_budget;
  o.order = inst.order;
  o.precedence = inst.precedence;
  o.windows = inst.windows;
  return o;
}

std::size_t MilpModel::add_var(Variable v) {
  vars.push_back(std::move(v));
  return vars.size() - 1;
}

std::size_t MilpModel::add_row(LinearConstraint c) {
  // Merge repeated variables and drop zero coefficients.
  std::map<std::size_t, double> merged;
  for (const auto& t : c.terms) merged[t.var] += t.coef;
  c.terms.clear();
  for (const auto& [v, a] : merged) {
    if (a != 0.0) c.terms.push_back({v, a});
  }
  rows.push_back(std::move(c));
  return rows.size() - 1;
}

std::size_t MilpModel::count(std::string_view family) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const auto& r) { return r.family == family; }));
}

std::size_t MilpModel::find_var(std::string_view name) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == name) return i;
  }
  return kNone;
}

double MilpModel::objective_value(const std::vector<double>& x) const {
  double s = 0.0;
  for (const auto& t : objective) s += t.coef * x[t.var];
  return s;
}

double MilpModel::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.violation(x));
  for (std::size_t j = 0; j < vars.size(); ++j) {
    worst = std::max(worst, vars[j].lb - x[j]);
    worst = std::max(worst, x[j] - vars[j].ub);
  }
  return worst;
}

namespace {

std::string name_z(const MultiGraph& g, const Edge& e) {
  return "z_" + g.vertices()[e.from].label + "_" + g.vertices()[e.to].label + "_" +
         g.workers()[e.worker].id;
}

// ω^(t)_{v|w}: execution part of any edge entering v in w's layer.
double execution_of(const MultiGraph& g, std::size_t w, std::size_t v, std::string_view mu) {
  const auto& in = g.in_edges(w, v);
  if (in.empty()) return 0.0;
  const EdgeWeight* ew = g.edges()[in.front()].find(mu);
  return ew ? ew->execution : 0.0;
}

class Encoder {
 public:
  Encoder(const MultiGraph& g, const EncodeOptions& opts) : g_(g), opts_(opts) {
    m_.options = opts;
  }

  MilpModel run() {
    check_preconditions();
    plan_families();
    compute_big_m();
    declare_variables();
    emit_bases();
    emit_task_completion();
    if (m_.has_mtz) emit_mtz();
    emit_order();
    for (const auto& mu : m_.tracked) emit_mfe(mu);
    emit_precedence();
    emit_windows();
    emit_objective();
    emit_energy();
    emit_wait_box();
    return std::move(m_);
  }

 private:
  const MultiGraph& g_;
  const EncodeOptions& opts_;
  MilpModel m_;

  std::size_t nw() const { return g_.workers().size(); }
  const std::string& wid(std::size_t w) const { return g_.workers()[w].id; }
  const std::string& vlabel(std::size_t v) const { return g_.vertices()[v].label; }

  bool waiting_on(std::string_view mu) const { return opts_.waiting && mu == kTimeCost; }

  void check_preconditions() {
    const auto& inst = g_.instance();
    const bool needs_time = opts_.objective == ObjectiveKind::Mtm ||
                            opts_.objective == ObjectiveKind::TotalTime ||
                            !opts_.precedence.empty() || !opts_.windows.empty() || opts_.waiting;
    if (needs_time && !inst.has_cost_type(kTimeCost)) {
      throw EncodeError("model needs the 'time' cost type, which the instance does not declare");
    }
    if (opts_.energy_budget && !inst.has_cost_type(kEnergyCost)) {
      throw EncodeError("energy budget needs the 'energy' cost type");
    }
    for (const auto& mu : opts_.track) {
      if (!inst.has_cost_type(mu)) throw EncodeError("cannot track unknown cost type '" + mu + "'");
    }
    std::vector<const Task*> tasks;
    for (const auto& t : inst.tasks) tasks.push_back(&t);
    std::sort(tasks.begin(), tasks.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const Task* t : tasks) {
      if (!t->mandatory) continue;
      bool reachable = false;
      for (auto v : g_.task_group(t->id)) {
        for (std::size_t w = 0; w < nw(); ++w) {
          if (!g_.in_edges(w, v).empty()) reachable = true;
        }
      }
      if (!reachable) {
        throw EncodeError("mandatory task '" + t->id + "' has no compatible edge in any worker layer");
      }
    }
  }

  void plan_families() {
    m_.has_mtz = opts_.sec == SecMode::Mtz || !opts_.order.empty();
    std::set<std::string> tracked(opts_.track.begin(), opts_.track.end());
    if (!opts_.precedence.empty() || !opts_.windows.empty() || opts_.waiting) {
      tracked.insert(std::string(kTimeCost));
    }
    m_.tracked.assign(tracked.begin(), tracked.end());
  }

  void compute_big_m() {
    m_.m.resize(nw());
    for (std::size_t w = 0; w < nw(); ++w) m_.m[w] = static_cast<double>(g_.task_vertices(w).size());

    double all_time = 0.0;
    for (const auto& e : g_.edges()) all_time += e.weight(kTimeCost);
    m_.wait_cap.assign(nw(), opts_.waiting ? all_time : 0.0);

    for (const auto& mu : g_.instance().cost_types) {
      auto& o = m_.big_o[mu];
      o.resize(nw());
      for (std::size_t w = 0; w < nw(); ++w) {
        o[w] = 1.0 + g_.layer_weight_sum(w, mu) + (waiting_on(mu) ? m_.wait_cap[w] : 0.0);
      }
    }
  }

  void declare_variables() {
    const std::size_t nv = g_.vertices().size();
    m_.z.assign(g_.edges().size(), kNone);
    for (std::size_t e = 0; e < g_.edges().size(); ++e) {
      const Edge& edge = g_.edges()[e];
      Variable v;
      v.name = name_z(g_, edge);
      v.kind = VarKind::Z;
      v.edge = e;
      v.worker = edge.worker;
      m_.z[e] = m_.add_var(std::move(v));
    }

    m_.yb.assign(nw(), kNone);
    for (std::size_t w = 0; w < nw(); ++w) {
      Variable v;
      v.name = "yb_" + wid(w);
      v.kind = VarKind::YB;
      v.worker = w;
      m_.yb[w] = m_.add_var(std::move(v));
    }

    m_.yc.assign(nw(), std::vector<std::size_t>(nv, kNone));
    for (std::size_t w = 0; w < nw(); ++w) {
      for (auto u : g_.task_vertices(w)) {
        Variable v;
        v.name = "yc_" + vlabel(u) + "_" + wid(w);
        v.kind = VarKind::YC;
        v.worker = w;
        v.vertex = u;
        m_.yc[w][u] = m_.add_var(std::move(v));
      }
    }

    m_.p.assign(nw(), std::vector<std::size_t>(nv, kNone));
    if (m_.has_mtz) {
      for (std::size_t w = 0; w < nw(); ++w) {
        for (auto u : g_.task_vertices(w)) {
          Variable v;
          v.name = "p_" + vlabel(u) + "_" + wid(w);
          v.kind = VarKind::P;
          v.type = VarType::Integer;
          v.ub = m_.m[w];
          v.worker = w;
          v.vertex = u;
          m_.p[w][u] = m_.add_var(std::move(v));
        }
      }
    }

    for (const auto& mu : m_.tracked) {
      auto& fm = m_.f[mu];
      fm.assign(nw(), std::vector<std::size_t>(nv, kNone));
      for (std::size_t w = 0; w < nw(); ++w) {
        for (auto u : g_.task_vertices(w)) {
          Variable v;
          v.name = "f_" + mu + "_" + vlabel(u) + "_" + wid(w);
          v.kind = VarKind::F;
          v.type = VarType::Continuous;
          v.ub = m_.big_o[mu][w];
          v.worker = w;
          v.vertex = u;
          v.cost_type = mu;
          fm[w][u] = m_.add_var(std::move(v));
        }
      }
    }

    m_.wp.assign(nw(), kNone);
    if (opts_.waiting) {
      for (std::size_t w = 0; w < nw(); ++w) {
        Variable v;
        v.name = "wp_" + wid(w);
        v.kind = VarKind::WP;
        v.type = VarType::Continuous;
        v.ub = m_.wait_cap[w];
        v.worker = w;
        m_.wp[w] = m_.add_var(std::move(v));
      }
    }

    if (opts_.objective == ObjectiveKind::Mtm) {
      double ub = 0.0;
      for (std::size_t w = 0; w < nw(); ++w) ub = std::max(ub, m_.big_o[std::string(kTimeCost)][w]);
      Variable v;
      v.name = "msigma";
      v.kind = VarKind::MSigma;
      v.type = VarType::Continuous;
      v.ub = ub;
      m_.msigma = m_.add_var(std::move(v));
    }
  }

  void row(std::string name, const char* family, std::vector<Term> terms, Sense s, double rhs) {
    m_.add_row({std::move(name), family, std::move(terms), s, rhs});
  }

  void emit_bases() {
    for (std::size_t w = 0; w < nw(); ++w) {
      const std::size_t b = g_.base_of(w);
      std::vector<Term> out{{m_.yb[w], -1.0}}, in{{m_.yb[w], -1.0}};
      for (auto e : g_.out_edges(w, b)) out.push_back({m_.z[e], 1.0});
      for (auto e : g_.in_edges(w, b)) in.push_back({m_.z[e], 1.0});
      row("base_out_" + wid(w), kFamBases, std::move(out), Sense::Eq, 0.0);
      row("base_in_" + wid(w), kFamBases, std::move(in), Sense::Eq, 0.0);
    }
  }

  void emit_task_completion() {
    std::vector<const Task*> tasks;
    for (const auto& t : g_.instance().tasks) tasks.push_back(&t);
    std::sort(tasks.begin(), tasks.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const Task* t : tasks) {
      std::vector<Term> out, in;
      for (auto v : g_.task_group(t->id)) {
        for (std::size_t w = 0; w < nw(); ++w) {
          for (auto e : g_.out_edges(w, v)) out.push_back({m_.z[e], 1.0});
          for (auto e : g_.in_edges(w, v)) in.push_back({m_.z[e], 1.0});
        }
      }
      const Sense s = t->mandatory ? Sense::Eq : Sense::Le;
      row("task_out_" + t->id, kFamTaskTeam, std::move(out), s, 1.0);
      row("task_in_" + t->id, kFamTaskTeam, std::move(in), s, 1.0);
    }
    for (std::size_t w = 0; w < nw(); ++w) {
      for (auto v : g_.task_vertices(w)) {
        std::vector<Term> terms{{m_.yc[w][v], -2.0}};
        for (auto e : g_.out_edges(w, v)) terms.push_back({m_.z[e], 1.0});
        for (auto e : g_.in_edges(w, v)) terms.push_back({m_.z[e], 1.0});
        row("visit_" + vlabel(v) + "_" + wid(w), kFamTaskVertex, std::move(terms), Sense::Eq, 0.0);
      }
    }
  }

  void emit_mtz() {
    for (std::size_t w = 0; w < nw(); ++w) {
      const double mw = m_.m[w];
      const std::size_t b = g_.base_of(w);
      for (auto e : g_.layer_edges(w)) {
        const Edge& edge = g_.edges()[e];
        if (edge.from == b || edge.to == b) continue;
        // p_u - p_v + 1 <= m (1 - z)
        row("mtz_" + vlabel(edge.from) + "_" + vlabel(edge.to) + "_" + wid(w), kFamMtzOrder,
            {{m_.p[w][edge.from], 1.0}, {m_.p[w][edge.to], -1.0}, {m_.z[e], mw}}, Sense::Le,
            mw - 1.0);
      }
      for (auto u : g_.task_vertices(w)) {
        row("mtz_visit_" + vlabel(u) + "_" + wid(w), kFamMtzVisit,
            {{m_.p[w][u], 1.0}, {m_.yc[w][u], -mw}}, Sense::Le, 0.0);
      }
      for (auto e : g_.out_edges(w, b)) {
        const std::size_t u = g_.edges()[e].to;
        row("mtz_first_" + vlabel(u) + "_" + wid(w), kFamMtzFirst,
            {{m_.z[e], 1.0}, {m_.p[w][u], -1.0}}, Sense::Le, 0.0);
      }
    }
  }

  void emit_order() {
    for (const auto& o : opts_.order) {
      for (std::size_t w = 0; w < nw(); ++w) {
        if (o.worker && *o.worker != wid(w)) continue;
        const double mw = m_.m[w];
        for (auto u : g_.task_group(o.before)) {
          if (m_.p[w][u] == kNone) continue;
          for (auto v : g_.task_group(o.after)) {
            if (m_.p[w][v] == kNone || u == v) continue;
            // p_u - p_v <= m (2 - y_u - y_v)
            row("order_" + vlabel(u) + "_" + vlabel(v) + "_" + wid(w), kFamOrder,
                {{m_.p[w][u], 1.0}, {m_.p[w][v], -1.0}, {m_.yc[w][u], mw}, {m_.yc[w][v], mw}},
                Sense::Le, 2.0 * mw);
          }
        }
      }
    }
  }

  void emit_mfe(const std::string& mu) {
    const auto& fm = m_.f[mu];
    for (std::size_t w = 0; w < nw(); ++w) {
      const double O = m_.big_o[mu][w];
      const std::size_t b = g_.base_of(w);
      const bool wait = waiting_on(mu);
      for (auto e : g_.layer_edges(w)) {
        const Edge& edge = g_.edges()[e];
        if (edge.from == b || edge.to == b) continue;
        // f_u - f_v + Ω <= O (1 - z)
        row("mfe_" + mu + "_" + vlabel(edge.from) + "_" + vlabel(edge.to) + "_" + wid(w),
            kFamMfeChain, {{fm[w][edge.from], 1.0}, {fm[w][edge.to], -1.0}, {m_.z[e], O}},
            Sense::Le, O - edge.weight(mu));
      }
      for (auto u : g_.task_vertices(w)) {
        row("mfe_visit_" + mu + "_" + vlabel(u) + "_" + wid(w), kFamMfeVisit,
            {{fm[w][u], 1.0}, {m_.yc[w][u], -O}}, Sense::Le, 0.0);
      }
      for (auto e : g_.out_edges(w, b)) {
        const std::size_t u = g_.edges()[e].to;
        const double om = g_.edges()[e].weight(mu);
        if (wait) {
          // f_u - W >= Ω z - O (1 - z): departure shifted by the wait.
          row("mfe_first_" + mu + "_" + vlabel(u) + "_" + wid(w), kFamMfeFirst,
              {{fm[w][u], 1.0}, {m_.wp[w], -1.0}, {m_.z[e], -(om + O)}}, Sense::Ge, -O);
        } else {
          row("mfe_first_" + mu + "_" + vlabel(u) + "_" + wid(w), kFamMfeFirst,
              {{m_.z[e], om}, {fm[w][u], -1.0}}, Sense::Le, 0.0);
        }
      }
      for (auto u : g_.task_vertices(w)) {
        std::vector<Term> terms{{fm[w][u], 1.0}};
        for (auto e : g_.layer_edges(w)) {
          if (g_.edges()[e].to == b) continue;
          terms.push_back({m_.z[e], -g_.edges()[e].weight(mu)});
        }
        if (wait) terms.push_back({m_.wp[w], -1.0});
        row("mfe_cap_" + mu + "_" + vlabel(u) + "_" + wid(w), kFamMfeCap, std::move(terms),
            Sense::Le, 0.0);
      }
    }
  }

  void emit_precedence() {
    const std::string mu(kTimeCost);
    if (opts_.precedence.empty()) return;
    const auto& fm = m_.f.at(mu);
    for (const auto& pr : opts_.precedence) {
      // Σ f(before) <= Σ f(after) - Σ ω(after) y(after)
      std::vector<Term> terms;
      for (std::size_t w = 0; w < nw(); ++w) {
        for (auto u : g_.task_group(pr.before)) {
          if (fm[w][u] != kNone) terms.push_back({fm[w][u], 1.0});
        }
        for (auto v : g_.task_group(pr.after)) {
          if (fm[w][v] == kNone) continue;
          terms.push_back({fm[w][v], -1.0});
          terms.push_back({m_.yc[w][v], execution_of(g_, w, v, mu)});
        }
      }
      row("prec_" + pr.before + "_" + pr.after, kFamPrecedence, std::move(terms), Sense::Le, 0.0);
    }
  }

  void emit_windows() {
    const std::string mu(kTimeCost);
    if (opts_.windows.empty()) return;
    const auto& fm = m_.f.at(mu);
    for (const auto& tw : opts_.windows) {
      // start after t_i: Σ f - Σ ω y - t_i Σ y >= 0; finish before t_f: Σ f <= t_f
      std::vector<Term> start, finish;
      for (std::size_t w = 0; w < nw(); ++w) {
        for (auto v : g_.task_group(tw.task)) {
          if (fm[w][v] == kNone) continue;
          start.push_back({fm[w][v], 1.0});
          start.push_back({m_.yc[w][v], -execution_of(g_, w, v, mu) - tw.earliest});
          finish.push_back({fm[w][v], 1.0});
        }
      }
      row("window_start_" + tw.task, kFamWindow, std::move(start), Sense::Ge, 0.0);
      row("window_end_" + tw.task, kFamWindow, std::move(finish), Sense::Le, tw.latest);
    }
  }

  std::vector<Term> route_time(std::size_t w) const {
    std::vector<Term> terms;
    for (auto e : g_.layer_edges(w)) terms.push_back({m_.z[e], g_.edges()[e].weight(kTimeCost)});
    if (m_.wp[w] != kNone) terms.push_back({m_.wp[w], 1.0});
    return terms;
  }

  void emit_objective() {
    if (opts_.objective == ObjectiveKind::Mtm) {
      for (std::size_t w = 0; w < nw(); ++w) {
        auto terms = route_time(w);
        terms.push_back({m_.msigma, -1.0});
        row("mtm_" + wid(w), kFamMtm, std::move(terms), Sense::Le, 0.0);
      }
      m_.objective = {{m_.msigma, 1.0}};
    } else {
      std::map<std::size_t, double> obj;
      for (std::size_t w = 0; w < nw(); ++w) {
        for (const auto& t : route_time(w)) obj[t.var] += t.coef;
      }
      for (const auto& [v, a] : obj) {
        if (a != 0.0) m_.objective.push_back({v, a});
      }
    }
  }

  void emit_energy() {
    if (!opts_.energy_budget) return;
    for (std::size_t w = 0; w < nw(); ++w) {
      std::vector<Term> terms;
      for (auto e : g_.layer_edges(w)) terms.push_back({m_.z[e], g_.edges()[e].weight(kEnergyCost)});
      row("energy_" + wid(w), kFamEnergy, std::move(terms), Sense::Le, 1.0);
    }
  }

  void emit_wait_box() {
    if (!opts_.waiting) return;
    for (std::size_t w = 0; w < nw(); ++w) {
      row("wait_box_" + wid(w), kFamWaitBox, {{m_.wp[w], 1.0}, {m_.yb[w], -m_.wait_cap[w]}},
          Sense::Le, 0.0);
    }
  }
};

}  // namespace

MilpModel encode(const MultiGraph& g, const EncodeOptions& opts) {
  return Encoder(g, opts).run();
}

double divergence(const MultiGraph& g, const MilpModel& m, const std::vector<double>& x,
                  std::size_t worker, const std::vector<std::size_t>& S, int sign) {
  std::vector<char> in(g.vertices().size(), 0);
  for (auto v : S) in[v] = 1;
  double s = 0.0;
  for (auto e : g.layer_edges(worker)) {
    const Edge& edge = g.edges()[e];
    const bool crosses = sign > 0 ? (in[edge.from] && !in[edge.to]) : (!in[edge.from] && in[edge.to]);
    if (crosses) s += x[m.z[e]];
  }
  return s;
}

double integral(const MultiGraph& g, const MilpModel& m, const std::vector<double>& x,
                std::size_t worker, const std::vector<std::size_t>& S) {
  std::vector<char> in(g.vertices().size(), 0);
  for (auto v : S) in[v] = 1;
  double s = 0.0;
  for (auto e : g.layer_edges(worker)) {
    const Edge& edge = g.edges()[e];
    if (in[edge.from] && in[edge.to]) s += x[m.z[e]];
  }
  return s;
}

LinearConstraint make_dfj_cut(const MultiGraph& g, const MilpModel& m, std::size_t worker,
                              const std::vector<std::size_t>& Q) {
  std::vector<std::size_t> q(Q);
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  if (q.size() < 2) throw std::invalid_argument("subtour cut needs at least two vertices");
  if (std::binary_search(q.begin(), q.end(), g.base_of(worker))) {
    throw std::invalid_argument("subtour cut set contains the worker's base");
  }
  std::vector<char> in(g.vertices().size(), 0);
  for (auto v : q) in[v] = 1;

  LinearConstraint c;
  c.family = kFamDfj;
  c.name = "dfj_" + g.workers()[worker].id;
  for (auto v : q) c.name += "_" + g.vertices()[v].label;
  for (auto e : g.layer_edges(worker)) {
    const Edge& edge = g.edges()[e];
    if (in[edge.from] && in[edge.to]) c.terms.push_back({m.z[e], 1.0});
  }
  c.sense = Sense::Le;
  c.rhs = static_cast<double>(q.size()) - 1.0;
  return c;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_lp_terms(std::ostream& os, const MilpModel& m, const std::vector<Term>& terms) {
  std::size_t width = 0;
  bool first = true;
  for (const auto& t : terms) {
    std::string piece = (t.coef < 0 ? " - " : (first ? " " : " + ")) + num(std::abs(t.coef)) + " " +
                        m.vars[t.var].name;
    if (width + piece.size() > 200) {
      os << "\n  ";
      width = 0;
    }
    os << piece;
    width += piece.size();
    first = false;
  }
  if (terms.empty()) os << " 0 " << m.vars.front().name;
}

}  // namespace

void write_lp(const MilpModel& m, std::ostream& os) {
  os << "\\ hmwtpp model\n";
  os << "Minimize\n obj:";
  if (m.objective.empty() && !m.vars.empty()) {
    os << " 0 " << m.vars.front().name;
  } else {
    write_lp_terms(os, m, m.objective);
  }
  os << "\nSubject To\n";
  for (const auto& r : m.rows) {
    if (r.terms.empty() && m.vars.empty()) continue;
    os << " " << r.name << ":";
    write_lp_terms(os, m, r.terms);
    const char* op = r.sense == Sense::Le ? " <= " : r.sense == Sense::Ge ? " >= " : " = ";
    os << op << num(r.rhs) << "\n";
  }
  os << "Bounds\n";
  for (const auto& v : m.vars) {
    if (v.type == VarType::Binary) continue;
    os << " " << num(v.lb) << " <= " << v.name << " <= " << num(v.ub) << "\n";
  }
  std::vector<std::string> gen, bin;
  for (const auto& v : m.vars) {
    if (v.type == VarType::Integer) gen.push_back(v.name);
    if (v.type == VarType::Binary) bin.push_back(v.name);
  }
  if (!gen.empty()) {
    os << "General\n";
    for (const auto& n : gen) os << " " << n << "\n";
  }
  if (!bin.empty()) {
    os << "Binary\n";
    for (const auto& n : bin) os << " " << n << "\n";
  }
  os << "End\n";
}

void write_mps(const MilpModel& m, std::ostream& os) {
  // Free MPS.
  os << "NAME hmwtpp\nROWS\n N obj\n";
  for (const auto& r : m.rows) {
    const char t = r.sense == Sense::Le ? 'L' : r.sense == Sense::Ge ? 'G' : 'E';
    os << " " << t << " " << r.name << "\n";
  }
  std::vector<std::vector<std::pair<std::string, double>>> cols(m.vars.size());
  for (const auto& t : m.objective) cols[t.var].push_back({"obj", t.coef});
  for (const auto& r : m.rows) {
    for (const auto& t : r.terms) cols[t.var].push_back({r.name, t.coef});
  }
  os << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < m.vars.size(); ++j) {
    const bool integral = m.vars[j].is_integral();
    if (integral != in_int) {
      os << " MARKER" << marker++ << " 'MARKER' " << (integral ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = integral;
    }
    if (cols[j].empty()) os << " " << m.vars[j].name << " obj 0\n";
    for (const auto& [row, a] : cols[j]) os << " " << m.vars[j].name << " " << row << " " << num(a) << "\n";
  }
  if (in_int) os << " MARKER" << marker++ << " 'MARKER' 'INTEND'\n";
  os << "RHS\n";
  for (const auto& r : m.rows) {
    if (r.rhs != 0.0) os << " rhs " << r.name << " " << num(r.rhs) << "\n";
  }
  os << "BOUNDS\n";
  for (const auto& v : m.vars) {
    if (v.type == VarType::Binary) {
      os << " BV bnd " << v.name << "\n";
    } else {
      if (v.lb != 0.0) os << " LO bnd " << v.name << " " << num(v.lb) << "\n";
      os << " UP bnd " << v.name << " " << num(v.ub) << "\n";
    }
  }
  os << "ENDATA\n";
}

}  // namespace hmwtpp
