#pragma once

// Domain vocabulary: workers, tasks and their approaches, bases, compatibility
// and the global constraint lists that sit on top of them.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hmwtpp {

using Id = std::string;

inline constexpr std::string_view kTimeCost = "time";
inline constexpr std::string_view kEnergyCost = "energy";

/// One way of carrying out a task, identified by (task id, approach id).
struct TaskApproach {
  Id task;
  Id approach;

  auto operator<=>(const TaskApproach&) const = default;
};

using ApproachSet = std::set<TaskApproach>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

struct Approach {
  Id id;
  std::optional<Id> location;
  // worker id -> cost type -> execution cost at this approach.
  std::map<Id, std::map<std::string, double>> execution;

  bool operator==(const Approach&) const = default;
};

struct Task {
  Id id;
  std::vector<Approach> approaches;
  bool mandatory = true;

  const Approach* find_approach(std::string_view approach_id) const;
  bool operator==(const Task&) const = default;
};

struct Worker {
  Id id;
  Id base;
  ApproachSet compatibility;
  double speed = 1.0;  // distance units per second for Euclidean travel
  double power = 0.0;  // fraction of the energy budget consumed per second

  bool operator==(const Worker&) const = default;
};

struct Base {
  Id id;
  std::optional<Id> location;

  bool operator==(const Base&) const = default;
};

/// Within the route of `worker` (every worker when unset), `before` is visited
/// ahead of `after`. Task level: expands over all approach pairs.
struct OrderPair {
  std::optional<Id> worker;
  Id before;
  Id after;

  bool operator==(const OrderPair&) const = default;
};

/// Completion of task `before` happens no later than the start of task `after`,
/// whichever workers perform them.
struct PrecedencePair {
  Id before;
  Id after;

  bool operator==(const PrecedencePair&) const = default;
};

/// Service of `task` starts at or after `earliest` and completes by `latest`.
struct TimeWindow {
  Id task;
  double earliest = 0.0;
  double latest = 0.0;

  bool operator==(const TimeWindow&) const = default;
};

struct TravelModel {
  enum class Kind { Uniform, Euclidean };
  // Euclidean distance flavour: exact, TSPLIB nearest-integer, TSPLIB ATT.
  enum class Metric { Exact, Nint, Att };
  Kind kind = Kind::Uniform;
  Metric metric = Metric::Exact;
  // Uniform: every move between distinct locations costs `uniform_time`;
  // staying at the same location costs `same_location_time`.
  double uniform_time = 0.0;
  double same_location_time = 0.0;

  bool operator==(const TravelModel&) const = default;
};

/// Planar distance under the given metric.
double planar_distance(TravelModel::Metric metric, Point2 a, Point2 b);

struct ProblemInstance {
  std::string name;
  std::vector<std::string> cost_types{std::string(kTimeCost)};
  std::vector<Task> tasks;
  std::vector<Worker> workers;
  std::vector<Base> bases;
  std::map<Id, Point2> locations;
  TravelModel travel;
  std::vector<OrderPair> order;
  std::vector<PrecedencePair> precedence;
  std::vector<TimeWindow> windows;
  bool waiting_points = false;
  bool energy_budget = false;

  const Task* find_task(std::string_view id) const;
  const Worker* find_worker(std::string_view id) const;
  const Base* find_base(std::string_view id) const;
  bool has_cost_type(std::string_view label) const;

  /// Every (task, approach) pair of the instance.
  ApproachSet all_approaches() const;
  /// Approaches of mandatory tasks only.
  ApproachSet mandatory_approaches() const;

  bool operator==(const ProblemInstance&) const = default;
};

/// w-compatible restriction: keeps the members of `s` that `w` can perform.
ApproachSet restrict(const ApproachSet& s, const Worker& w);

struct Defect {
  enum class Kind {
    DuplicateId,
    DanglingReference,
    EmptyApproachList,
    NoBase,
    BaseTaskIdClash,
    UnknownCostType,
    IncompatibleMandatoryTask,
    PrecedenceCycle,
    EmptyTimeWindow,
    InvalidParameter,
  };
  Kind kind;
  std::string message;
};

std::string_view to_string(Defect::Kind kind);

/// Structural checks; an empty result means the instance is well formed.
std::vector<Defect> validate_instance(const ProblemInstance& inst);

}  // namespace hmwtpp
