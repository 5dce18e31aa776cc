#pragma once

// Plans: per-worker routes with schedules, extracted from solver output,
// checked by an independent validator, and produced exactly by a brute-force
// enumerator on small instances.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmwtpp/graph.hpp"
#include "hmwtpp/instances.hpp"
#include "hmwtpp/milp.hpp"

namespace hmwtpp {

struct WorkerRoute {
  Id worker;
  bool active = false;
  // Vertex indices, base first and last; empty when inactive.
  std::vector<std::size_t> route;
  // Per route position: completion time (departure time at the first base
  // entry, return time at the last) and cumulative energy.
  std::vector<double> finish;
  std::vector<double> energy;
  double wait = 0.0;  // all of it taken at base departure

  double route_time() const { return finish.empty() ? 0.0 : finish.back(); }
  double route_energy() const { return energy.empty() ? 0.0 : energy.back(); }
};

struct Plan {
  std::vector<WorkerRoute> workers;  // graph worker order
  ObjectiveKind objective_kind = ObjectiveKind::Mtm;
  double objective = 0.0;
};

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Follows the active edges (z > 0.5) from each base. Throws PlanError when a
/// worker's active edges do not form one cycle through its base.
Plan extract_plan(const std::vector<double>& x, const MultiGraph& g, const MilpModel& m);

/// Recomputes finish/energy along every route (wait at departure) and the
/// objective. Throws PlanError when consecutive stops have no edge.
void recompute_schedule(Plan& plan, const MultiGraph& g);

enum class Family { Cycle, Coverage, Compatibility, Order, Precedence, TimeWindow, Energy, Objective };
const char* to_string(Family f);

struct Finding {
  Family family;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool passed() const { return findings.empty(); }
  bool failed(Family f) const;
};

/// Independent check of every constraint family. Times come from a fresh
/// forward simulation over the graph weights, never from the plan.
ValidationReport validate_plan(const Plan& plan, const ProblemInstance& inst, const MultiGraph& g);

inline constexpr std::size_t kBruteForceMaxTasks = 6;
inline constexpr std::size_t kBruteForceMaxWorkers = 2;

/// Exhaustive optimum over task assignments, approaches and visit orders,
/// with least departure waits from longest paths over the precedence
/// difference constraints. nullopt when infeasible. Throws
/// std::invalid_argument beyond the size bound.
std::optional<Plan> brute_force(const ProblemInstance& inst, const MultiGraph& g,
                                ObjectiveKind objective = ObjectiveKind::Mtm);

/// Solver-variable assignment realizing a plan (z, y, p, f, wait, M_Σ).
std::vector<double> plan_to_solution(const Plan& plan, const MultiGraph& g, const MilpModel& m);

void write_plan(const Plan& plan, const MultiGraph& g, std::ostream& os);
Plan read_plan(const MultiGraph& g, std::istream& is);

/// Routes as GeoJSON LineStrings over the grid geometry.
nlohmann::json plan_geojson(const Plan& plan, const MultiGraph& g, const PowerGrid& grid);

}  // namespace hmwtpp
