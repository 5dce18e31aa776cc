#pragma once

// MILP assembly over a MultiGraph: routing variables, task completion,
// subtour elimination (MTZ rows or lazy DFJ cuts), partial-cost tracking,
// precedence / windows / energy and the min-max objective.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hmwtpp/graph.hpp"

namespace hmwtpp {

enum class VarType { Binary, Integer, Continuous };
enum class VarKind { Z, YB, YC, P, F, MSigma, WP };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Z;
  VarType type = VarType::Binary;
  double lb = 0.0;
  double ub = 1.0;
  std::size_t edge = kNone;
  std::size_t worker = kNone;
  std::size_t vertex = kNone;
  std::string cost_type;  // F only

  bool is_integral() const { return type != VarType::Continuous; }
};

enum class Sense { Le, Eq, Ge };

struct Term {
  std::size_t var;
  double coef;
};

struct LinearConstraint {
  std::string name;
  std::string family;
  std::vector<Term> terms;
  Sense sense = Sense::Le;
  double rhs = 0.0;

  double activity(const std::vector<double>& x) const;
  /// Signed violation (> 0 means violated) at `x`.
  double violation(const std::vector<double>& x) const;
};

// Family tags.
inline constexpr const char* kFamBases = "bases";
inline constexpr const char* kFamTaskTeam = "task_team";
inline constexpr const char* kFamTaskVertex = "task_vertex";
inline constexpr const char* kFamMtzOrder = "mtz_order";
inline constexpr const char* kFamMtzVisit = "mtz_visit";
inline constexpr const char* kFamMtzFirst = "mtz_first";
inline constexpr const char* kFamOrder = "order";
inline constexpr const char* kFamMfeChain = "mfe_chain";
inline constexpr const char* kFamMfeVisit = "mfe_visit";
inline constexpr const char* kFamMfeFirst = "mfe_first";
inline constexpr const char* kFamMfeCap = "mfe_cap";
inline constexpr const char* kFamPrecedence = "precedence";
inline constexpr const char* kFamMtm = "mtm";
inline constexpr const char* kFamWindow = "window";
inline constexpr const char* kFamEnergy = "energy";
inline constexpr const char* kFamWaitBox = "wait_box";
inline constexpr const char* kFamDfj = "dfj";

enum class SecMode { DfjLazy, Mtz };
enum class ObjectiveKind { Mtm, TotalTime };

struct EncodeOptions {
  SecMode sec = SecMode::Mtz;
  ObjectiveKind objective = ObjectiveKind::Mtm;
  bool waiting = false;
  bool energy_budget = false;
  std::vector<OrderPair> order;
  std::vector<PrecedencePair> precedence;
  std::vector<TimeWindow> windows;
  /// Extra cost types to track with partial-cost rows even when no
  /// constraint needs them.
  std::vector<std::string> track;

  /// Options mirroring the constraint lists and flags stored on the instance.
  static EncodeOptions from_instance(const ProblemInstance& inst, SecMode sec);
};

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MilpModel {
  std::vector<Variable> vars;
  std::vector<LinearConstraint> rows;
  std::vector<Term> objective;
  EncodeOptions options;
  bool has_mtz = false;
  std::vector<std::string> tracked;  // cost types with partial-cost rows

  // Index maps (kNone where the variable does not exist).
  std::vector<std::size_t> z;                    // by edge
  std::vector<std::size_t> yb;                   // by worker
  std::vector<std::vector<std::size_t>> yc;      // [worker][vertex]
  std::vector<std::vector<std::size_t>> p;       // [worker][vertex]
  std::map<std::string, std::vector<std::vector<std::size_t>>> f;  // [mu][worker][vertex]
  std::size_t msigma = kNone;
  std::vector<std::size_t> wp;                   // by worker

  // Big-M registry.
  std::vector<double> m;                                  // m_w = |T|_w|
  std::map<std::string, std::vector<double>> big_o;       // O_w^(μ)
  std::vector<double> wait_cap;                           // upper bound on Ω^WP_w

  std::size_t add_var(Variable v);
  std::size_t add_row(LinearConstraint c);
  std::size_t count(std::string_view family) const;
  std::size_t find_var(std::string_view name) const;
  double objective_value(const std::vector<double>& x) const;
  /// Largest violation over rows and bounds.
  double max_violation(const std::vector<double>& x) const;
};

MilpModel encode(const MultiGraph& g, const EncodeOptions& opts);

/// ∇₊ (sign > 0) or ∇₋ (sign < 0) of vertex set S for worker w at x.
double divergence(const MultiGraph& g, const MilpModel& m, const std::vector<double>& x,
                  std::size_t worker, const std::vector<std::size_t>& S, int sign);
/// Σ^(w) S: active edges of w with both ends in S.
double integral(const MultiGraph& g, const MilpModel& m, const std::vector<double>& x,
                std::size_t worker, const std::vector<std::size_t>& S);

/// Σ^(w) Q ≤ |Q| − 1. Throws std::invalid_argument if b_w ∈ Q or |Q| < 2.
LinearConstraint make_dfj_cut(const MultiGraph& g, const MilpModel& m, std::size_t worker,
                              const std::vector<std::size_t>& Q);

void write_lp(const MilpModel& m, std::ostream& os);
void write_mps(const MilpModel& m, std::ostream& os);

}  // namespace hmwtpp
