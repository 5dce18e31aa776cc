#pragma once

// Bounded dual simplex over an explicit basis inverse. Every variable, slacks
// included, carries finite bounds, so a dual feasible start always exists.

#include <cstddef>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hmwtpp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LpTolerances {
  double primal = 1e-7;
  double dual = 1e-9;
  double pivot = 1e-9;
};

/// min cᵀx  s.t.  row_lo ≤ A x ≤ row_hi,  lb ≤ x ≤ ub  (column bounds finite).
class LpProblem {
 public:
  std::size_t add_col(double cost, double lb, double ub);
  std::size_t add_row(const std::vector<std::pair<std::size_t, double>>& terms, double lo, double hi);

  std::size_t num_cols() const { return cost_.size(); }
  std::size_t num_rows() const { return row_lo_.size(); }
  const std::vector<double>& cost() const { return cost_; }
  const std::vector<double>& col_lb() const { return lb_; }
  const std::vector<double>& col_ub() const { return ub_; }
  const std::vector<double>& row_lo() const { return row_lo_; }
  const std::vector<double>& row_hi() const { return row_hi_; }
  const std::vector<std::pair<int, double>>& column(std::size_t j) const { return cols_[j]; }
  const std::vector<std::pair<int, double>>& row(std::size_t i) const { return rows_[i]; }

 private:
  std::vector<double> cost_, lb_, ub_;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<std::vector<std::pair<int, double>>> rows_;
  std::vector<double> row_lo_, row_hi_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// Per-variable status over columns then row slacks: 0 basic, 1 at lower, 2 at upper.
struct Basis {
  std::vector<signed char> status;
};

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DualSimplex {
 public:
  explicit DualSimplex(const LpProblem& p, LpTolerances tol = {});

  /// Picks up rows appended to the problem after construction; their slacks
  /// enter the basis.
  void sync_rows();
  void set_col_bounds(std::size_t j, double lb, double ub);
  double col_lb(std::size_t j) const { return lo_[j] * cscale_[j]; }
  double col_ub(std::size_t j) const { return hi_[j] * cscale_[j]; }

  LpSolution solve(std::size_t max_iterations = 0);

  Basis basis() const;
  /// Installs a basis; missing trailing slack entries are taken as basic.
  void load_basis(const Basis& b);

  std::size_t total_iterations() const { return total_iterations_; }

 private:
  const LpProblem& p_;
  LpTolerances tol_;
  std::size_t n_ = 0, m_ = 0;
  // Internal data is scaled by powers of two: x_j = cscale_j · x̃_j and row i
  // is multiplied by rscale_i.
  std::vector<double> cscale_, rscale_;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> cost_;
  std::vector<double> lo_, hi_, c_, x_, d_;
  std::vector<signed char> st_;
  std::vector<int> head_, pos_;
  std::vector<double> binv_;
  bool factored_ = false;
  bool primal_dirty_ = true;
  int updates_ = 0;
  std::size_t total_iterations_ = 0;

  void init_slack_bounds(std::size_t first_row);
  void refactor();
  bool try_refactor();
  void compute_primal();
  void compute_duals();
  bool restore_dual_feasibility();
  void ftran(std::size_t j, std::vector<double>& out) const;
  double dot_col(const double* rowvec, std::size_t j) const;
  void pivot(std::size_t r, std::size_t q, const std::vector<double>& alpha_q);
  double objective() const;
};

LpSolution solve_lp(const LpProblem& p, std::size_t max_iterations = 0);

}  // namespace hmwtpp
