#include "hmwtpp/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hmwtpp {

const Approach* Task::find_approach(std::string_view approach_id) const {
  for (const auto& a : approaches) {
    if (a.id == approach_id) return &a;
  }
  return nullptr;
}

const Task* ProblemInstance::find_task(std::string_view id) const {
  for (const auto& t : tasks) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

const Worker* ProblemInstance::find_worker(std::string_view id) const {
  for (const auto& w : workers) {
    if (w.id == id) return &w;
  }
  return nullptr;
}

const Base* ProblemInstance::find_base(std::string_view id) const {
  for (const auto& b : bases) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

bool ProblemInstance::has_cost_type(std::string_view label) const {
  return std::find(cost_types.begin(), cost_types.end(), label) != cost_types.end();
}

ApproachSet ProblemInstance::all_approaches() const {
  ApproachSet out;
  for (const auto& t : tasks) {
    for (const auto& a : t.approaches) out.insert({t.id, a.id});
  }
  return out;
}

ApproachSet ProblemInstance::mandatory_approaches() const {
  ApproachSet out;
  for (const auto& t : tasks) {
    if (!t.mandatory) continue;
    for (const auto& a : t.approaches) out.insert({t.id, a.id});
  }
  return out;
}

double planar_distance(TravelModel::Metric metric, Point2 a, Point2 b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  switch (metric) {
    case TravelModel::Metric::Exact: return std::hypot(dx, dy);
    case TravelModel::Metric::Nint: return std::floor(std::hypot(dx, dy) + 0.5);
    case TravelModel::Metric::Att: {
      const double r = std::sqrt((dx * dx + dy * dy) / 10.0);
      const double t = std::floor(r + 0.5);
      return t < r ? t + 1.0 : t;
    }
  }
  return 0.0;
}

ApproachSet restrict(const ApproachSet& s, const Worker& w) {
  ApproachSet out;
  for (const auto& ta : s) {
    if (w.compatibility.contains(ta)) out.insert(ta);
  }
  return out;
}

std::string_view to_string(Defect::Kind kind) {
  switch (kind) {
    case Defect::Kind::DuplicateId: return "duplicate id";
    case Defect::Kind::DanglingReference: return "dangling reference";
    case Defect::Kind::EmptyApproachList: return "empty approach list";
    case Defect::Kind::NoBase: return "no base";
    case Defect::Kind::BaseTaskIdClash: return "base/task id clash";
    case Defect::Kind::UnknownCostType: return "unknown cost type";
    case Defect::Kind::IncompatibleMandatoryTask: return "incompatible mandatory task";
    case Defect::Kind::PrecedenceCycle: return "precedence cycle";
    case Defect::Kind::EmptyTimeWindow: return "empty time window";
    case Defect::Kind::InvalidParameter: return "invalid parameter";
  }
  return "unknown";
}

namespace {

void check_unique(const std::vector<std::string>& ids, std::string_view what,
                  std::vector<Defect>& out) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      out.push_back({Defect::Kind::DuplicateId, std::string(what) + " '" + id + "' declared twice"});
    }
  }
}

// Reports one defect per strongly connected piece found by DFS back edges.
void check_precedence_acyclic(const ProblemInstance& inst, std::vector<Defect>& out) {
  std::map<Id, std::vector<Id>> succ;
  for (const auto& p : inst.precedence) succ[p.before].push_back(p.after);
  for (auto& [k, v] : succ) std::sort(v.begin(), v.end());

  std::map<Id, int> color;  // 0 white, 1 on stack, 2 done
  bool cyclic = false;
  std::string witness;
  std::function<void(const Id&)> visit = [&](const Id& u) {
    color[u] = 1;
    auto it = succ.find(u);
    if (it != succ.end()) {
      for (const auto& v : it->second) {
        if (color[v] == 1 && !cyclic) {
          cyclic = true;
          witness = u + " -> " + v;
        } else if (color[v] == 0) {
          visit(v);
        }
      }
    }
    color[u] = 2;
  };
  for (const auto& [u, _] : succ) {
    if (color[u] == 0) visit(u);
  }
  if (cyclic) {
    out.push_back({Defect::Kind::PrecedenceCycle, "precedence cycle through " + witness});
  }
}

}  // namespace

std::vector<Defect> validate_instance(const ProblemInstance& inst) {
  std::vector<Defect> out;

  {
    std::vector<std::string> ids;
    for (const auto& t : inst.tasks) ids.push_back(t.id);
    check_unique(ids, "task", out);
    ids.clear();
    for (const auto& w : inst.workers) ids.push_back(w.id);
    check_unique(ids, "worker", out);
    ids.clear();
    for (const auto& b : inst.bases) ids.push_back(b.id);
    check_unique(ids, "base", out);
    check_unique(inst.cost_types, "cost type", out);
  }

  if (inst.bases.empty()) {
    out.push_back({Defect::Kind::NoBase, "instance declares no base"});
  }
  for (const auto& b : inst.bases) {
    if (inst.find_task(b.id)) {
      out.push_back({Defect::Kind::BaseTaskIdClash, "id '" + b.id + "' is both a base and a task"});
    }
    if (b.location && !inst.locations.contains(*b.location)) {
      out.push_back({Defect::Kind::DanglingReference,
                     "base '" + b.id + "' references unknown location '" + *b.location + "'"});
    }
  }

  for (const auto& t : inst.tasks) {
    if (t.approaches.empty()) {
      out.push_back({Defect::Kind::EmptyApproachList, "task '" + t.id + "' has no approach"});
    }
    std::vector<std::string> aids;
    for (const auto& a : t.approaches) {
      aids.push_back(a.id);
      if (a.location && !inst.locations.contains(*a.location)) {
        out.push_back({Defect::Kind::DanglingReference, "approach " + t.id + "/" + a.id +
                                                            " references unknown location '" +
                                                            *a.location + "'"});
      }
      for (const auto& [wid, costs] : a.execution) {
        if (!inst.find_worker(wid)) {
          out.push_back({Defect::Kind::DanglingReference, "approach " + t.id + "/" + a.id +
                                                              " prices unknown worker '" + wid + "'"});
        }
        for (const auto& [mu, value] : costs) {
          if (!inst.has_cost_type(mu)) {
            out.push_back({Defect::Kind::UnknownCostType,
                           "approach " + t.id + "/" + a.id + " uses cost type '" + mu + "'"});
          }
          if (value < 0.0) {
            out.push_back({Defect::Kind::InvalidParameter,
                           "approach " + t.id + "/" + a.id + " has negative " + mu + " cost"});
          }
        }
      }
    }
    check_unique(aids, "approach of task '" + t.id + "'", out);
  }

  for (const auto& w : inst.workers) {
    if (!inst.find_base(w.base)) {
      out.push_back({Defect::Kind::DanglingReference,
                     "worker '" + w.id + "' references unknown base '" + w.base + "'"});
    }
    for (const auto& ta : w.compatibility) {
      const Task* t = inst.find_task(ta.task);
      if (!t || !t->find_approach(ta.approach)) {
        out.push_back({Defect::Kind::DanglingReference, "worker '" + w.id +
                                                            "' compatible with unknown approach " +
                                                            ta.task + "/" + ta.approach});
      }
    }
    if (inst.travel.kind == TravelModel::Kind::Euclidean && !(w.speed > 0.0)) {
      out.push_back({Defect::Kind::InvalidParameter, "worker '" + w.id + "' has non-positive speed"});
    }
    if (w.power < 0.0) {
      out.push_back({Defect::Kind::InvalidParameter, "worker '" + w.id + "' has negative power"});
    }
  }

  for (const auto& t : inst.tasks) {
    if (!t.mandatory) continue;
    bool covered = false;
    for (const auto& a : t.approaches) {
      for (const auto& w : inst.workers) {
        if (w.compatibility.contains({t.id, a.id})) covered = true;
      }
    }
    if (!covered) {
      out.push_back({Defect::Kind::IncompatibleMandatoryTask,
                     "mandatory task '" + t.id + "' is compatible with no worker"});
    }
  }

  for (const auto& p : inst.precedence) {
    for (const auto* id : {&p.before, &p.after}) {
      if (!inst.find_task(*id)) {
        out.push_back({Defect::Kind::DanglingReference, "precedence references unknown task '" + *id + "'"});
      }
    }
  }
  check_precedence_acyclic(inst, out);

  for (const auto& o : inst.order) {
    if (o.worker && !inst.find_worker(*o.worker)) {
      out.push_back({Defect::Kind::DanglingReference, "order pair references unknown worker '" + *o.worker + "'"});
    }
    for (const auto* id : {&o.before, &o.after}) {
      if (!inst.find_task(*id)) {
        out.push_back({Defect::Kind::DanglingReference, "order pair references unknown task '" + *id + "'"});
      }
    }
  }

  for (const auto& tw : inst.windows) {
    if (!inst.find_task(tw.task)) {
      out.push_back({Defect::Kind::DanglingReference, "time window references unknown task '" + tw.task + "'"});
    }
    if (tw.earliest > tw.latest) {
      out.push_back({Defect::Kind::EmptyTimeWindow, "empty time window on task '" + tw.task + "'"});
    }
  }

  if ((!inst.precedence.empty() || !inst.windows.empty() || inst.waiting_points) &&
      !inst.has_cost_type(kTimeCost)) {
    out.push_back({Defect::Kind::UnknownCostType, "time tracking requested without a 'time' cost type"});
  }
  if (inst.energy_budget && !inst.has_cost_type(kEnergyCost)) {
    out.push_back({Defect::Kind::UnknownCostType, "energy budget requested without an 'energy' cost type"});
  }
  return out;
}

}  // namespace hmwtpp
