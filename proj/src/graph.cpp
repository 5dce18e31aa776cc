#include "hmwtpp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace hmwtpp {

double Edge::weight(std::string_view cost_type) const {
  const EdgeWeight* w = find(cost_type);
  return w ? w->total() : 0.0;
}

const EdgeWeight* Edge::find(std::string_view cost_type) const {
  for (const auto& [k, v] : weights) {
    if (k == cost_type) return &v;
  }
  return nullptr;
}

std::size_t MultiGraph::worker_index(std::string_view id) const {
  for (std::size_t i = 0; i < workers_.size(); ++i) {
    if (workers_[i].id == id) return i;
  }
  return kNone;
}

std::size_t MultiGraph::vertex_index(const TaskApproach& ta) const {
  auto it = approach_vertex_.find(ta);
  return it == approach_vertex_.end() ? kNone : it->second;
}

std::size_t MultiGraph::base_vertex(std::string_view base_id) const {
  auto it = base_vertex_.find(base_id);
  return it == base_vertex_.end() ? kNone : it->second;
}

std::optional<std::size_t> MultiGraph::find_edge(std::size_t from, std::size_t to,
                                                 std::size_t worker) const {
  const auto& lookup = edge_lookup_[worker];
  auto it = lookup.find({from, to});
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::size_t>& MultiGraph::out_edges(std::size_t worker, std::size_t u) const {
  return out_[worker][u];
}

const std::vector<std::size_t>& MultiGraph::in_edges(std::size_t worker, std::size_t u) const {
  return in_[worker][u];
}

std::vector<std::size_t> MultiGraph::successors(std::size_t worker, std::size_t u) const {
  std::vector<std::size_t> out;
  for (auto e : out_[worker][u]) out.push_back(edges_[e].to);
  return out;
}

std::vector<std::size_t> MultiGraph::predecessors(std::size_t worker, std::size_t u) const {
  std::vector<std::size_t> out;
  for (auto e : in_[worker][u]) out.push_back(edges_[e].from);
  return out;
}

const std::vector<std::size_t>& MultiGraph::task_group(std::string_view task_id) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = task_groups_.find(std::string(task_id));
  return it == task_groups_.end() ? kEmpty : it->second;
}

double MultiGraph::layer_weight_sum(std::size_t worker, std::string_view cost_type) const {
  double s = 0.0;
  for (auto e : layer_edges_[worker]) s += edges_[e].weight(cost_type);
  return s;
}

MultiGraph build_graph(const ProblemInstance& inst, const Weigher& weigher, const EdgeFilter& filter) {
  MultiGraph g;
  g.instance_ = inst;

  std::vector<Base> bases = inst.bases;
  std::sort(bases.begin(), bases.end(), [](const Base& a, const Base& b) { return a.id < b.id; });
  for (const auto& b : bases) {
    Vertex v;
    v.kind = Vertex::Kind::Base;
    v.base = b.id;
    v.label = b.id;
    g.base_vertex_[b.id] = g.vertices_.size();
    g.vertices_.push_back(std::move(v));
  }

  std::vector<const Task*> tasks;
  for (const auto& t : inst.tasks) tasks.push_back(&t);
  std::sort(tasks.begin(), tasks.end(), [](const Task* a, const Task* b) { return a->id < b->id; });
  for (const Task* t : tasks) {
    std::vector<Id> aids;
    for (const auto& a : t->approaches) aids.push_back(a.id);
    std::sort(aids.begin(), aids.end());
    for (const auto& aid : aids) {
      Vertex v;
      v.kind = Vertex::Kind::Task;
      v.approach = {t->id, aid};
      v.label = aids.size() == 1 ? t->id : t->id + "." + aid;
      g.approach_vertex_[v.approach] = g.vertices_.size();
      g.task_groups_[t->id].push_back(g.vertices_.size());
      g.vertices_.push_back(std::move(v));
    }
  }

  g.workers_ = inst.workers;
  std::sort(g.workers_.begin(), g.workers_.end(),
            [](const Worker& a, const Worker& b) { return a.id < b.id; });

  const std::size_t nv = g.vertices_.size();
  const std::size_t nw = g.workers_.size();
  g.worker_base_.assign(nw, kNone);
  g.worker_tasks_.assign(nw, {});
  g.layer_edges_.assign(nw, {});
  g.edge_lookup_.assign(nw, {});
  g.out_.assign(nw, std::vector<std::vector<std::size_t>>(nv));
  g.in_.assign(nw, std::vector<std::vector<std::size_t>>(nv));

  auto add_edge = [&](std::size_t w, std::size_t from, std::size_t to) {
    const Worker& worker = g.workers_[w];
    const Vertex& vf = g.vertices_[from];
    const Vertex& vt = g.vertices_[to];
    if (filter && !filter(worker, vf, vt)) return;
    Edge e;
    e.from = from;
    e.to = to;
    e.worker = w;
    e.weights = weigher(worker, vf, vt);
    for (const auto& [mu, ew] : e.weights) {
      if (!std::isfinite(ew.transition) || !std::isfinite(ew.execution)) {
        throw GraphError("non-finite " + mu + " weight on edge [" + vf.label + ", " + vt.label +
                         "]|" + worker.id);
      }
      if (mu == kTimeCost && (ew.transition < 0.0 || ew.execution < 0.0)) {
        throw GraphError("negative time weight on edge [" + vf.label + ", " + vt.label + "]|" +
                         worker.id);
      }
    }
    const std::size_t idx = g.edges_.size();
    g.edges_.push_back(std::move(e));
    g.layer_edges_[w].push_back(idx);
    g.edge_lookup_[w][{from, to}] = idx;
    g.out_[w][from].push_back(idx);
    g.in_[w][to].push_back(idx);
  };

  for (std::size_t w = 0; w < nw; ++w) {
    const Worker& worker = g.workers_[w];
    auto bit = g.base_vertex_.find(worker.base);
    if (bit == g.base_vertex_.end()) {
      throw GraphError("worker '" + worker.id + "' has unknown base '" + worker.base + "'");
    }
    const std::size_t b = bit->second;
    g.worker_base_[w] = b;
    for (std::size_t v = 0; v < nv; ++v) {
      const Vertex& vx = g.vertices_[v];
      if (!vx.is_base() && worker.compatibility.contains(vx.approach)) g.worker_tasks_[w].push_back(v);
    }
    const auto& tw = g.worker_tasks_[w];
    for (auto v : tw) {
      add_edge(w, b, v);
      add_edge(w, v, b);
    }
    for (auto u : tw) {
      for (auto v : tw) {
        if (u == v) continue;
        if (g.vertices_[u].approach.task == g.vertices_[v].approach.task) continue;
        add_edge(w, u, v);
      }
    }
  }
  return g;
}

namespace {

std::optional<Point2> location_of(const ProblemInstance& inst, const std::optional<Id>& loc) {
  if (!loc) return std::nullopt;
  auto it = inst.locations.find(*loc);
  if (it == inst.locations.end()) return std::nullopt;
  return it->second;
}

std::optional<Id> vertex_location(const ProblemInstance& inst, const Vertex& v) {
  if (v.is_base()) {
    const Base* b = inst.find_base(v.base);
    return b ? b->location : std::nullopt;
  }
  const Task* t = inst.find_task(v.approach.task);
  const Approach* a = t ? t->find_approach(v.approach.approach) : nullptr;
  return a ? a->location : std::nullopt;
}

}  // namespace

Weigher make_table_weigher(const ProblemInstance& inst) {
  return [inst](const Worker& w, const Vertex& from, const Vertex& to) {
    WeightMap out;
    const auto lf = vertex_location(inst, from);
    const auto lt = vertex_location(inst, to);
    double travel = 0.0;
    if (inst.travel.kind == TravelModel::Kind::Uniform) {
      const bool same = lf && lt && *lf == *lt;
      travel = same ? inst.travel.same_location_time : inst.travel.uniform_time;
    } else {
      const auto pf = location_of(inst, lf);
      const auto pt = location_of(inst, lt);
      if (pf && pt) travel = planar_distance(inst.travel.metric, *pf, *pt) / w.speed;
    }

    std::map<std::string, double> exec;
    if (!to.is_base()) {
      const Task* t = inst.find_task(to.approach.task);
      const Approach* a = t ? t->find_approach(to.approach.approach) : nullptr;
      if (a) {
        auto it = a->execution.find(w.id);
        if (it != a->execution.end()) exec = it->second;
      }
    }

    for (const auto& mu : inst.cost_types) {
      EdgeWeight ew;
      if (mu == kTimeCost) {
        ew.transition = travel;
        ew.execution = exec.contains(mu) ? exec.at(mu) : 0.0;
      } else if (mu == kEnergyCost) {
        const double exec_time = exec.contains(std::string(kTimeCost)) ? exec.at(std::string(kTimeCost)) : 0.0;
        ew.transition = w.power * travel;
        ew.execution = exec.contains(mu) ? exec.at(mu) : w.power * exec_time;
      } else {
        ew.execution = exec.contains(mu) ? exec.at(mu) : 0.0;
      }
      out[mu] = ew;
    }
    return out;
  };
}

std::uint64_t edge_count_bound(std::uint64_t n_workers, std::uint64_t n_tasks,
                               std::uint64_t n_approaches) {
  if (n_tasks == 0) return 0;
  return n_workers * (2 * n_tasks * n_approaches +
                      n_approaches * n_approaches * n_tasks * (n_tasks - 1));
}

void write_graph_dump(const MultiGraph& g, std::ostream& os) {
  os << "# hmwtpp graph dump\n";
  os << "vertices " << g.vertices().size() << "\n";
  for (std::size_t i = 0; i < g.vertices().size(); ++i) {
    const auto& v = g.vertices()[i];
    os << i << ' ' << (v.is_base() ? "base" : "task") << ' ' << v.label << "\n";
  }
  os << "workers " << g.workers().size() << "\n";
  for (std::size_t w = 0; w < g.workers().size(); ++w) {
    os << w << ' ' << g.workers()[w].id << ' ' << g.vertices()[g.base_of(w)].label << "\n";
  }
  os << "edges " << g.edges().size() << "\n";
  os << std::setprecision(17);
  for (const auto& e : g.edges()) {
    os << g.vertices()[e.from].label << ' ' << g.vertices()[e.to].label << ' '
       << g.workers()[e.worker].id;
    for (const auto& [mu, ew] : e.weights) {
      os << ' ' << mu << '=' << ew.transition << '+' << ew.execution;
    }
    os << "\n";
  }
}

}  // namespace hmwtpp
