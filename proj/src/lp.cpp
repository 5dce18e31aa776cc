#include "hmwtpp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hmwtpp {

namespace {
constexpr int kRefactorEvery = 100;
constexpr int kBlandAfter = 60;
constexpr double kSingular = 1e-11;
constexpr double kPerturb = 5e-7;
}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration limit";
  }
  return "unknown";
}

std::size_t LpProblem::add_col(double cost, double lb, double ub) {
  if (!std::isfinite(lb) || !std::isfinite(ub)) throw LpError("column bounds must be finite");
  if (lb > ub) throw LpError("column with empty bound interval");
  cost_.push_back(cost);
  lb_.push_back(lb);
  ub_.push_back(ub);
  cols_.emplace_back();
  return cost_.size() - 1;
}

std::size_t LpProblem::add_row(const std::vector<std::pair<std::size_t, double>>& terms, double lo,
                               double hi) {
  const int i = static_cast<int>(row_lo_.size());
  std::vector<std::pair<int, double>> r;
  for (const auto& [j, a] : terms) {
    if (j >= cols_.size()) throw LpError("row references unknown column");
    if (!std::isfinite(a)) throw LpError("non-finite coefficient");
    if (a == 0.0) continue;
    cols_[j].push_back({i, a});
    r.push_back({static_cast<int>(j), a});
  }
  rows_.push_back(std::move(r));
  row_lo_.push_back(lo);
  row_hi_.push_back(hi);
  return row_lo_.size() - 1;
}

DualSimplex::DualSimplex(const LpProblem& p, LpTolerances tol) : p_(p), tol_(tol) {
  n_ = p.num_cols();
  m_ = 0;

  // Geometric-mean scaling over the rows present now, rounded to powers of two
  // so that scaling itself is exact.
  cscale_.assign(n_, 1.0);
  std::vector<double> rs(p.num_rows(), 1.0);
  for (int pass = 0; pass < 6; ++pass) {
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
      double mn = kInf, mx = 0.0;
      for (const auto& [j, a] : p.row(i)) {
        const double v = std::abs(a) * cscale_[j];
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
      if (mx > 0.0) rs[i] = 1.0 / std::sqrt(mn * mx);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      double mn = kInf, mx = 0.0;
      for (const auto& [i, a] : p.column(j)) {
        const double v = std::abs(a) * rs[i];
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
      if (mx > 0.0) cscale_[j] = 1.0 / std::sqrt(mn * mx);
    }
  }
  for (auto& c : cscale_) c = std::exp2(std::round(std::log2(c)));

  cols_.assign(n_, {});
  lo_.resize(n_);
  hi_.resize(n_);
  cost_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    lo_[j] = p.col_lb()[j] / cscale_[j];
    hi_[j] = p.col_ub()[j] / cscale_[j];
    cost_[j] = p.cost()[j] * cscale_[j];
  }
  c_ = cost_;
  x_.resize(n_);
  st_.resize(n_);
  pos_.assign(n_, -1);
  for (std::size_t j = 0; j < n_; ++j) {
    st_[j] = c_[j] >= 0.0 ? 1 : 2;
    x_[j] = st_[j] == 1 ? lo_[j] : hi_[j];
  }
  sync_rows();
}

void DualSimplex::init_slack_bounds(std::size_t first_row) {
  for (std::size_t i = first_row; i < m_; ++i) {
    const double rsc = rscale_[i];
    double mn = 0.0, mx = 0.0;
    for (const auto& [j, a] : p_.row(i)) {
      const double l = p_.col_lb()[j], u = p_.col_ub()[j];
      mn += a > 0 ? a * l : a * u;
      mx += a > 0 ? a * u : a * l;
    }
    double lo = p_.row_lo()[i], hi = p_.row_hi()[i];
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      lo = mn;
      hi = mx;
    } else if (!std::isfinite(lo)) {
      lo = std::min(mn, hi);
    } else if (!std::isfinite(hi)) {
      hi = std::max(mx, lo);
    }
    if (lo > hi) throw LpError("row with empty activity interval");
    lo_[n_ + i] = lo * rsc;
    hi_[n_ + i] = hi * rsc;
  }
}

void DualSimplex::sync_rows() {
  const std::size_t old_m = m_;
  m_ = p_.num_rows();
  if (m_ == old_m && !head_.empty()) return;
  rscale_.resize(m_, 1.0);
  for (std::size_t i = old_m; i < m_; ++i) {
    double mx = 0.0;
    for (const auto& [j, a] : p_.row(i)) mx = std::max(mx, std::abs(a) * cscale_[j]);
    rscale_[i] = mx > 0.0 ? std::exp2(std::round(-std::log2(mx))) : 1.0;
    for (const auto& [j, a] : p_.row(i)) cols_[j].push_back({static_cast<int>(i), a * cscale_[j] * rscale_[i]});
  }
  lo_.resize(n_ + m_);
  hi_.resize(n_ + m_);
  c_.resize(n_ + m_, 0.0);
  x_.resize(n_ + m_, 0.0);
  d_.resize(n_ + m_, 0.0);
  st_.resize(n_ + m_, 0);
  pos_.resize(n_ + m_, -1);
  init_slack_bounds(old_m);
  for (std::size_t i = old_m; i < m_; ++i) {
    st_[n_ + i] = 0;
    pos_[n_ + i] = static_cast<int>(head_.size());
    head_.push_back(static_cast<int>(n_ + i));
  }
  factored_ = false;
  primal_dirty_ = true;
}

void DualSimplex::set_col_bounds(std::size_t j, double lb, double ub) {
  if (lb > ub) throw LpError("empty bound interval");
  lo_[j] = lb / cscale_[j];
  hi_[j] = ub / cscale_[j];
  if (st_[j] != 0) {
    x_[j] = st_[j] == 1 ? lo_[j] : hi_[j];
    primal_dirty_ = true;
  }
}

Basis DualSimplex::basis() const { return Basis{st_}; }

void DualSimplex::load_basis(const Basis& b) {
  std::size_t basic = 0;
  std::vector<signed char> st(n_ + m_, 0);
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    st[j] = j < b.status.size() ? b.status[j] : 0;
    if (st[j] == 0) ++basic;
  }
  if (basic != m_) throw LpError("basis has wrong number of basic variables");
  st_ = std::move(st);
  head_.clear();
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (st_[j] == 0) {
      pos_[j] = static_cast<int>(head_.size());
      head_.push_back(static_cast<int>(j));
    } else {
      pos_[j] = -1;
      x_[j] = st_[j] == 1 ? lo_[j] : hi_[j];
    }
  }
  factored_ = false;
  primal_dirty_ = true;
}

double DualSimplex::dot_col(const double* v, std::size_t j) const {
  if (j >= n_) return -v[j - n_];
  double s = 0.0;
  for (const auto& [i, a] : cols_[j]) s += v[i] * a;
  return s;
}

void DualSimplex::ftran(std::size_t j, std::vector<double>& out) const {
  out.assign(m_, 0.0);
  if (j >= n_) {
    const std::size_t i = j - n_;
    for (std::size_t r = 0; r < m_; ++r) out[r] = -binv_[r * m_ + i];
    return;
  }
  for (const auto& [i, a] : cols_[j]) {
    for (std::size_t r = 0; r < m_; ++r) out[r] += binv_[r * m_ + i] * a;
  }
}

// Basis columns split into structurals S and slacks of rows R2; rows whose
// slack is nonbasic form R1 with |R1| = |S|. With K = A[R1,S]:
//   B⁻¹ = [[K⁻¹, 0], [A[R2,S] K⁻¹, −I]]
// so only the k×k block K needs inverting.
bool DualSimplex::try_refactor() {
  std::vector<int> S;  // basis positions holding structurals
  for (std::size_t r = 0; r < m_; ++r) {
    if (static_cast<std::size_t>(head_[r]) < n_) S.push_back(static_cast<int>(r));
  }
  std::vector<int> R1;
  std::vector<int> row_idx(m_, -1);
  for (std::size_t i = 0; i < m_; ++i) {
    if (st_[n_ + i] != 0) {
      row_idx[i] = static_cast<int>(R1.size());
      R1.push_back(static_cast<int>(i));
    }
  }
  const std::size_t k = S.size();
  if (R1.size() != k) throw LpError("inconsistent basis");

  std::vector<double> M(k * k, 0.0), inv(k * k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    for (const auto& [i, a] : cols_[head_[S[c]]]) {
      if (row_idx[i] >= 0) M[row_idx[i] * k + c] = a;
    }
  }
  for (std::size_t i = 0; i < k; ++i) inv[i * k + i] = 1.0;

  std::vector<char> used(k, 0);
  std::vector<int> piv(k, -1);
  std::vector<int> dropped;
  for (std::size_t c = 0; c < k; ++c) {
    int best = -1;
    double bestv = kSingular;
    for (std::size_t i = 0; i < k; ++i) {
      if (used[i]) continue;
      const double v = std::abs(M[i * k + c]);
      if (v > bestv) {
        bestv = v;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) {
      dropped.push_back(static_cast<int>(c));
      continue;
    }
    used[best] = 1;
    piv[c] = best;
    double* mr = &M[best * k];
    double* ir = &inv[best * k];
    const double s = 1.0 / mr[c];
    for (std::size_t t = c; t < k; ++t) mr[t] *= s;
    for (std::size_t t = 0; t < k; ++t) ir[t] *= s;
    for (std::size_t i = 0; i < k; ++i) {
      if (static_cast<int>(i) == best) continue;
      const double f = M[i * k + c];
      if (f == 0.0) continue;
      double* mi = &M[i * k];
      double* ii = &inv[i * k];
      for (std::size_t t = c; t < k; ++t) mi[t] -= f * mr[t];
      for (std::size_t t = 0; t < k; ++t) {
        if (ir[t] != 0.0) ii[t] -= f * ir[t];
      }
    }
  }

  if (!dropped.empty()) {
    // Swap dependent structurals out for slacks of the rows left unpivoted.
    std::vector<int> free_rows;
    for (std::size_t i = 0; i < k; ++i) {
      if (!used[i]) free_rows.push_back(R1[i]);
    }
    for (std::size_t t = 0; t < dropped.size(); ++t) {
      const int pos = S[dropped[t]];
      const int j = head_[pos];
      st_[j] = (x_[j] - lo_[j] <= hi_[j] - x_[j]) ? 1 : 2;
      x_[j] = st_[j] == 1 ? lo_[j] : hi_[j];
      pos_[j] = -1;
      const int slack = static_cast<int>(n_) + free_rows[t];
      head_[pos] = slack;
      pos_[slack] = pos;
      st_[slack] = 0;
    }
    return false;
  }

  binv_.assign(m_ * m_, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    const double* kinv_row = &inv[piv[c] * k];
    double* brow = &binv_[S[c] * m_];
    for (std::size_t i = 0; i < k; ++i) brow[R1[i]] = kinv_row[i];
  }
  for (std::size_t i = 0; i < m_; ++i) {
    if (st_[n_ + i] == 0) binv_[pos_[n_ + i] * m_ + i] = -1.0;
  }
  for (std::size_t c = 0; c < k; ++c) {
    const double* kinv_row = &inv[piv[c] * k];
    for (const auto& [t, a] : cols_[head_[S[c]]]) {
      if (st_[n_ + t] != 0) continue;
      double* brow = &binv_[pos_[n_ + t] * m_];
      for (std::size_t i = 0; i < k; ++i) brow[R1[i]] += a * kinv_row[i];
    }
  }
  factored_ = true;
  updates_ = 0;
  primal_dirty_ = true;
  return true;
}

void DualSimplex::refactor() {
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (try_refactor()) return;
  }
  throw LpError("basis repair failed to produce a nonsingular basis");
}

void DualSimplex::compute_primal() {
  std::vector<double> v(m_, 0.0);
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (st_[j] == 0 || x_[j] == 0.0) continue;
    if (j >= n_) {
      v[j - n_] -= x_[j];
    } else {
      for (const auto& [i, a] : cols_[j]) v[i] += a * x_[j];
    }
  }
  for (std::size_t r = 0; r < m_; ++r) {
    const double* br = &binv_[r * m_];
    double s = 0.0;
    for (std::size_t i = 0; i < m_; ++i) s += br[i] * v[i];
    x_[head_[r]] = -s;
  }
  primal_dirty_ = false;
}

void DualSimplex::compute_duals() {
  std::vector<double> y(m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    const double cb = c_[head_[r]];
    if (cb == 0.0) continue;
    const double* br = &binv_[r * m_];
    for (std::size_t i = 0; i < m_; ++i) y[i] += cb * br[i];
  }
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    d_[j] = st_[j] == 0 ? 0.0 : c_[j] - dot_col(y.data(), j);
  }
}

bool DualSimplex::restore_dual_feasibility() {
  bool flipped = false;
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (st_[j] == 0 || lo_[j] == hi_[j]) continue;
    if (st_[j] == 1 && d_[j] < -tol_.dual) {
      st_[j] = 2;
      x_[j] = hi_[j];
      flipped = true;
    } else if (st_[j] == 2 && d_[j] > tol_.dual) {
      st_[j] = 1;
      x_[j] = lo_[j];
      flipped = true;
    }
  }
  if (flipped) primal_dirty_ = true;
  return flipped;
}

void DualSimplex::pivot(std::size_t r, std::size_t q, const std::vector<double>& alpha_q) {
  double* br = &binv_[r * m_];
  const double s = 1.0 / alpha_q[r];
  for (std::size_t i = 0; i < m_; ++i) br[i] *= s;
  for (std::size_t t = 0; t < m_; ++t) {
    if (t == r) continue;
    const double f = alpha_q[t];
    if (f == 0.0) continue;
    double* bt = &binv_[t * m_];
    for (std::size_t i = 0; i < m_; ++i) bt[i] -= f * br[i];
  }
  const int leaving = head_[r];
  pos_[leaving] = -1;
  head_[r] = static_cast<int>(q);
  pos_[q] = static_cast<int>(r);
  st_[q] = 0;
  ++updates_;
}

double DualSimplex::objective() const {
  double s = 0.0;
  for (std::size_t j = 0; j < n_; ++j) s += c_[j] * x_[j];
  return s;
}

LpSolution DualSimplex::solve(std::size_t max_iterations) {
  if (max_iterations == 0) max_iterations = 50 * (n_ + m_) + 20000;
  LpSolution out;

  auto fresh_start = [&] {
    refactor();
    compute_primal();
    compute_duals();
    if (restore_dual_feasibility()) compute_primal();
  };

  // Cost perturbation against dual degeneracy (routing columns mostly cost
  // nothing). Removed once primal feasible; bound flips then restore dual
  // feasibility for the true costs and the iterations carry on.
  const std::vector<double>& c0 = cost_;
  bool perturbed = true;
  for (std::size_t j = 0; j < n_; ++j) {
    if (lo_[j] == hi_[j]) continue;
    const double u = std::fmod(static_cast<double>(j) * 0.6180339887498949, 1.0);
    const double mag = kPerturb * (1.0 + std::abs(c0[j])) * (1.0 + u);
    c_[j] = c0[j] + (st_[j] == 2 ? -mag : mag);
  }

  if (!factored_) {
    fresh_start();
  } else {
    if (primal_dirty_) compute_primal();
    compute_duals();
    if (restore_dual_feasibility()) compute_primal();
  }

  std::vector<double> alpha_r(n_ + m_, 0.0), alpha_q, flip_col;
  struct Cand {
    std::size_t j;
    double ratio;
    double abs_alpha;
  };
  std::vector<Cand> cands;
  std::vector<char> skip(m_, 0);
  int stalled = 0;
  bool bland = false;
  double best_obj = -kInf;
  std::size_t iter = 0;

  while (true) {
    if (iter >= max_iterations) {
      out.status = LpStatus::IterationLimit;
      break;
    }
    if (updates_ >= kRefactorEvery) fresh_start();

    // Leaving row: largest bound violation (Bland: lowest variable index).
    std::size_t r = m_;
    double worst = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (skip[i]) continue;
      const int j = head_[i];
      const double v = x_[j];
      double inf = 0.0;
      if (v < lo_[j] - tol_.primal) inf = lo_[j] - v;
      else if (v > hi_[j] + tol_.primal) inf = v - hi_[j];
      if (inf <= 0.0) continue;
      if (bland) {
        if (r == m_ || j < head_[r]) r = i;
      } else if (inf > worst) {
        worst = inf;
        r = i;
      }
    }
    if (r == m_) {
      if (updates_ > 0) {
        fresh_start();
        std::fill(skip.begin(), skip.end(), 0);
        continue;
      }
      if (perturbed) {
        perturbed = false;
        std::copy(c0.begin(), c0.end(), c_.begin());
        compute_duals();
        if (restore_dual_feasibility()) compute_primal();
        best_obj = -kInf;
        stalled = 0;
        bland = false;
        continue;
      }
      out.status = LpStatus::Optimal;
      break;
    }

    const int leave = head_[r];
    const bool below = x_[leave] < lo_[leave];
    const double sigma = below ? 1.0 : -1.0;
    double slope = below ? lo_[leave] - x_[leave] : x_[leave] - hi_[leave];

    const double* rho = &binv_[r * m_];
    cands.clear();
    double reach = 0.0;  // movement towards feasibility through tiny pivots
    for (std::size_t j = 0; j < n_ + m_; ++j) {
      if (st_[j] == 0) continue;
      alpha_r[j] = dot_col(rho, j);
      if (lo_[j] == hi_[j]) continue;
      const double at = sigma * alpha_r[j];
      const bool ok = (st_[j] == 1 && at < -tol_.pivot) || (st_[j] == 2 && at > tol_.pivot);
      if (!ok) {
        if ((st_[j] == 1 && at < 0.0) || (st_[j] == 2 && at > 0.0)) reach += std::abs(at) * (hi_[j] - lo_[j]);
        continue;
      }
      const double dt = st_[j] == 1 ? d_[j] : -d_[j];
      cands.push_back({j, std::max(dt, 0.0) / std::abs(alpha_r[j]), std::abs(alpha_r[j])});
    }
    if (cands.empty()) {
      if (updates_ > 0) {
        fresh_start();
        continue;
      }
      // Infeasible only if the row cannot close its gap even through pivots
      // too small to take; otherwise leave this row alone for now.
      if (slope > reach + 1e-9 * (1.0 + std::abs(x_[leave]))) {
        out.status = LpStatus::Infeasible;
        break;
      }
      skip[r] = 1;
      continue;
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return a.ratio != b.ratio ? a.ratio < b.ratio : a.j < b.j;
    });

    std::size_t k = 0;
    std::size_t qi = 0;
    if (bland) {
      const double best = cands.front().ratio;
      for (std::size_t t = 0; t < cands.size() && cands[t].ratio <= best + 1e-12; ++t) {
        if (cands[t].j < cands[qi].j) qi = t;
      }
    } else {
      // Long-step: pass breakpoints while flipping keeps the slope positive.
      while (k + 1 < cands.size()) {
        const Cand& c = cands[k];
        const double next = slope - c.abs_alpha * (hi_[c.j] - lo_[c.j]);
        if (next <= 0.0) break;
        slope = next;
        ++k;
      }
      // Harris pass among the remaining candidates.
      double theta_max = kInf;
      for (std::size_t t = k; t < cands.size(); ++t) {
        const Cand& c = cands[t];
        const double dt = st_[c.j] == 1 ? d_[c.j] : -d_[c.j];
        theta_max = std::min(theta_max, (dt + tol_.dual) / c.abs_alpha);
      }
      qi = k;
      for (std::size_t t = k; t < cands.size() && cands[t].ratio <= theta_max; ++t) {
        if (cands[t].abs_alpha > cands[qi].abs_alpha) qi = t;
      }
    }
    const std::size_t q = cands[qi].j;
    const double arq = alpha_r[q];
    // A Harris pick may carry a slightly wrong-signed reduced cost; zero it so
    // the dual step never goes backwards.
    if ((st_[q] == 1 && d_[q] < 0.0) || (st_[q] == 2 && d_[q] > 0.0)) d_[q] = 0.0;

    ftran(q, alpha_q);
    if (std::abs(alpha_q[r] - arq) > 1e-7 * (1.0 + std::abs(arq)) && updates_ > 0) {
      fresh_start();
      continue;
    }

    // Dual step.
    const double theta_d = d_[q] / arq;
    for (std::size_t j = 0; j < n_ + m_; ++j) {
      if (st_[j] != 0) d_[j] -= theta_d * alpha_r[j];
    }
    d_[q] = 0.0;
    d_[leave] = -theta_d;

    // Bound flips for passed breakpoints.
    if (k > 0) {
      flip_col.assign(m_, 0.0);
      for (std::size_t t = 0; t < k; ++t) {
        const std::size_t j = cands[t].j;
        const double delta = st_[j] == 1 ? hi_[j] - lo_[j] : lo_[j] - hi_[j];
        st_[j] = st_[j] == 1 ? 2 : 1;
        x_[j] += delta;
        if (j >= n_) {
          flip_col[j - n_] -= delta;
        } else {
          for (const auto& [i, a] : cols_[j]) flip_col[i] += a * delta;
        }
      }
      for (std::size_t t = 0; t < m_; ++t) {
        const double* bt = &binv_[t * m_];
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i) s += bt[i] * flip_col[i];
        x_[head_[t]] -= s;
      }
    }

    // Primal step.
    const double target = below ? lo_[leave] : hi_[leave];
    const double theta_p = (x_[leave] - target) / alpha_q[r];
    for (std::size_t t = 0; t < m_; ++t) x_[head_[t]] -= theta_p * alpha_q[t];
    x_[q] += theta_p;
    x_[leave] = target;
    st_[leave] = below ? 1 : 2;
    pivot(r, q, alpha_q);
    std::fill(skip.begin(), skip.end(), 0);

    // Progress is judged on the dual objective: Harris steps may move it
    // by tiny amounts in either direction, so a plain θ test can miss cycles.
    const double obj = objective();
    if (obj > best_obj + 1e-9 * (1.0 + std::abs(obj))) {
      best_obj = obj;
      stalled = 0;
      bland = false;
    } else if (++stalled > kBlandAfter) {
      bland = true;
    }
    ++iter;
    ++total_iterations_;
  }

  out.iterations = iter;
  out.x.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) out.x[j] = x_[j] * cscale_[j];
  if (perturbed) std::copy(c0.begin(), c0.end(), c_.begin());
  out.objective = objective();
  return out;
}

LpSolution solve_lp(const LpProblem& p, std::size_t max_iterations) {
  DualSimplex ds(p);
  return ds.solve(max_iterations);
}

}  // namespace hmwtpp
