#pragma once

// Best-bound branch-and-bound over the LP relaxation, plus the relax-solve-
// iterate loop that adds subtour cuts at integral solutions.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "hmwtpp/lp.hpp"
#include "hmwtpp/milp.hpp"

namespace hmwtpp {

// Pseudocost: score candidates by the objective change their earlier
// branchings caused (most-fractional until a variable has history).
enum class Branching { MostFractional, Pseudocost };

struct Limits {
  Branching branching = Branching::Pseudocost;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  double gap = 0.0;
  std::size_t node_limit = std::numeric_limits<std::size_t>::max();
  std::size_t dfj_iterations = 500;
};

inline constexpr double kIntegralityTol = 1e-6;
inline constexpr double kObjectiveRelTol = 1e-6;

enum class SolveStatus { Optimal, Infeasible, TimeLimit, NodeLimit, IterationCap, Numerical };

const char* to_string(SolveStatus s);

struct DfjRound {
  std::size_t iteration = 0;
  double objective = 0.0;
  std::size_t components = 0;
  std::size_t cuts = 0;
  std::size_t nodes = 0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  bool has_incumbent = false;
  std::vector<double> x;
  double objective = 0.0;
  double best_bound = 0.0;
  double gap = 0.0;
  std::size_t nodes = 0;
  std::size_t cuts_added = 0;
  std::size_t lp_iterations = 0;
  double wall_seconds = 0.0;
  std::vector<DfjRound> rounds;
  std::string message;
};

/// Valid inequalities offered at fractional node solutions; returning an
/// empty list means nothing to add.
using Separator = std::function<std::vector<LinearConstraint>(const std::vector<double>& x)>;

struct BnbHooks {
  std::shared_ptr<const Basis> warm_start;   // root basis to start from
  std::shared_ptr<const Basis>* root_basis_out = nullptr;
  Separator separator;                       // fractional cuts, optional
  std::size_t separator_rounds = 20;         // per node
  std::vector<LinearConstraint>* cuts_out = nullptr;  // rows added by the separator
};

SolveReport solve_milp(const MilpModel& model, const Limits& limits, const BnbHooks& hooks = {});

/// Per worker, vertex sets of connected components of active edges that do
/// not contain the worker's base. Components are sorted; vertices ascending.
struct Subtour {
  std::size_t worker;
  std::vector<std::size_t> vertices;
};
std::vector<Subtour> separate_subtours(const std::vector<double>& x, const MultiGraph& g,
                                       const MilpModel& m);

/// Subtour cuts violated by a fractional point: per worker, a max-flow from
/// each visited vertex to the base; the source side of a small cut gives a set
/// whose DFJ row is tested. Cuts violated by less than `min_violation` are
/// skipped.
std::vector<LinearConstraint> separate_fractional(const std::vector<double>& x, const MultiGraph& g,
                                                  const MilpModel& m, double min_violation = 1e-3);

struct DfjOptions {
  std::size_t subset_threshold = 8;  // expand components smaller than this
  bool expand_subsets = true;
};

/// Solves `model` (encoded in DFJ-lazy mode), adding subtour cuts until the
/// incumbent is subtour-free. Cuts are appended to a copy of the model and
/// retained across iterations; duplicates are suppressed.
SolveReport dfj_loop(const MilpModel& model, const MultiGraph& g, const Limits& limits,
                     const DfjOptions& opts = {}, MilpModel* final_model = nullptr);

/// Min-max models only: per mandatory task, the makespan bounds the cheapest
/// base → v → base walk of whichever (worker, vertex) serves it. Valid for
/// every integral solution; empty for other objectives.
std::vector<LinearConstraint> reach_cuts(const MultiGraph& g, const MilpModel& m);

/// Replaces the partial-cost big-M O_w (a whole-layer weight sum) by the
/// largest cost a simple route can accumulate, in rows and bounds alike. The
/// integral feasible set is unchanged.
void tighten_partial_costs(const MultiGraph& g, MilpModel& m);

/// Dispatches on the model's SEC mode after tighten_partial_costs and
/// reach_cuts.
SolveReport solve(const MilpModel& model, const MultiGraph& g, const Limits& limits,
                  const DfjOptions& opts = {});

void write_solution(const MilpModel& m, const std::vector<double>& x, std::ostream& os);
/// Reads "name value" lines; unknown names are an error, missing ones are 0.
std::vector<double> read_solution(const MilpModel& m, std::istream& is);
void write_report(const SolveReport& r, std::ostream& os);

}  // namespace hmwtpp
