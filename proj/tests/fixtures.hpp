#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hmwtpp/core_model.hpp"
#include "hmwtpp/graph.hpp"
#include "hmwtpp/instances.hpp"
#include "hmwtpp/milp.hpp"
#include "hmwtpp/routes.hpp"
#include "hmwtpp/solver.hpp"

namespace fixtures {

using namespace hmwtpp;

// Euclidean instance: base at the origin, one single-approach task per point,
// every worker compatible with every task.
inline ProblemInstance line_instance(const std::vector<Point2>& pts, std::size_t workers = 1,
                                     double exec = 0.0) {
  ProblemInstance in;
  in.name = "line";
  in.travel.kind = TravelModel::Kind::Euclidean;
  in.locations["L0"] = {0, 0};
  in.bases.push_back({"b", "L0"});
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const std::string t = "t" + std::to_string(k + 1);
    in.locations["L" + t] = pts[k];
    Approach a{"a", "L" + t, {}};
    Task task{t, {a}, true};
    in.tasks.push_back(task);
  }
  for (std::size_t w = 0; w < workers; ++w) {
    Worker wk;
    wk.id = "w" + std::to_string(w + 1);
    wk.base = "b";
    for (auto& t : in.tasks) {
      wk.compatibility.insert({t.id, "a"});
      t.approaches[0].execution[wk.id]["time"] = exec;
    }
    in.workers.push_back(wk);
  }
  return in;
}

inline MultiGraph graph_of(const ProblemInstance& in) { return build_graph(in, make_table_weigher(in)); }

inline double solve_objective(const ProblemInstance& in, SecMode sec,
                              ObjectiveKind obj = ObjectiveKind::Mtm, SolveStatus* status = nullptr) {
  const MultiGraph g = graph_of(in);
  EncodeOptions o = EncodeOptions::from_instance(in, sec);
  o.objective = obj;
  const MilpModel m = encode(g, o);
  const SolveReport r = solve(m, g, Limits{});
  if (status) *status = r.status;
  return r.has_incumbent ? r.objective : std::nan("");
}

// Random-suite recipe shared by the property tests.
inline RandomSpec suite_spec(std::uint64_t seed, std::size_t max_tasks = 6, std::size_t max_workers = 3) {
  RandomSpec s;
  s.tasks = 2 + seed % (max_tasks - 1);
  s.workers = 1 + seed % max_workers;
  s.max_approaches = 1 + seed % 2;
  s.precedence_pairs = seed % 3;
  s.order_pairs = seed % 2;
  return s;
}

}  // namespace fixtures
