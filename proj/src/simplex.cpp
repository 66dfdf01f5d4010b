#include "tlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tlab/error.hpp"

namespace tlab {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

DenseLp::DenseLp(std::vector<double> objective, std::vector<double> upper)
    : n_(objective.size()), c_(std::move(objective)), upper_(std::move(upper)) {
  if (upper_.size() != n_) throw ValidationError("LP bound vector size mismatch");
  for (double u : upper_) {
    if (!(u >= 0.0)) throw ValidationError("LP upper bounds must be >= 0");
  }
  d_ = c_;
  state_.assign(n_, State::AtLower);
}

double DenseLp::value_of(std::size_t j) const {
  switch (state_[j]) {
    case State::AtLower: return 0.0;
    case State::AtUpper: return upper_of(j);
    case State::Basic: break;
  }
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i] == j) return beta_[i];
  }
  return 0.0;
}

void DenseLp::add_row(std::span<const double> coeffs, double rhs) {
  if (coeffs.size() != n_) throw ValidationError("LP row has wrong length");
  const std::size_t m_old = rows_.size();
  const auto x = primal();
  double activity = 0.0;
  for (std::size_t j = 0; j < n_; ++j) activity += coeffs[j] * x[j];

  rows_.emplace_back(coeffs.begin(), coeffs.end());
  rhs_.push_back(rhs);
  for (auto& row : tableau_) row.push_back(0.0);
  std::vector<double> t(n_ + m_old + 1, 0.0);
  std::copy(coeffs.begin(), coeffs.end(), t.begin());
  t[n_ + m_old] = 1.0;
  for (std::size_t i = 0; i < m_old; ++i) {
    const double coef = t[basis_[i]];
    if (coef == 0.0) continue;
    const auto& ti = tableau_[i];
    for (std::size_t j = 0; j < t.size(); ++j) t[j] -= coef * ti[j];
    t[basis_[i]] = 0.0;
  }
  tableau_.push_back(std::move(t));
  beta_.push_back(rhs - activity);
  basis_.push_back(n_ + m_old);
  state_.push_back(State::Basic);
  d_.push_back(0.0);
}

std::vector<double> DenseLp::primal() const {
  std::vector<double> x(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    if (state_[j] == State::AtUpper) x[j] = upper_[j];
  }
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i] < n_) x[basis_[i]] = beta_[i];
  }
  return x;
}

double DenseLp::objective_value() const {
  const auto x = primal();
  double v = 0.0;
  for (std::size_t j = 0; j < n_; ++j) v += c_[j] * x[j];
  return v;
}

std::vector<double> DenseLp::row_duals() const {
  std::vector<double> y(rows_.size(), 0.0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (state_[n_ + i] != State::Basic) y[i] = std::max(0.0, -d_[n_ + i]);
  }
  return y;
}

bool DenseLp::primal_feasible() const {
  const double tol = feasibility_tol * scale_;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (beta_[i] < -tol || beta_[i] > upper_of(basis_[i]) + tol) return false;
  }
  return true;
}

bool DenseLp::dual_feasible() const {
  const double tol = 1e-7;
  for (std::size_t j = 0; j < state_.size(); ++j) {
    if (state_[j] == State::AtLower && d_[j] > tol) return false;
    if (state_[j] == State::AtUpper && d_[j] < -tol) return false;
  }
  return true;
}

void DenseLp::pivot(std::size_t r, std::size_t q) {
  auto& tr = tableau_[r];
  const double inv = 1.0 / tr[q];
  for (double& v : tr) v *= inv;
  tr[q] = 1.0;
  const std::size_t width = tr.size();
  for (std::size_t i = 0; i < tableau_.size(); ++i) {
    if (i == r) continue;
    auto& ti = tableau_[i];
    const double f = ti[q];
    if (f == 0.0) continue;
    double* __restrict dst = ti.data();
    const double* __restrict src = tr.data();
    for (std::size_t j = 0; j < width; ++j) dst[j] -= f * src[j];
    ti[q] = 0.0;
  }
  const double dq = d_[q];
  if (dq != 0.0) {
    for (std::size_t j = 0; j < width; ++j) d_[j] -= dq * tr[j];
    d_[q] = 0.0;
  }
  state_[q] = State::Basic;
  basis_[r] = q;
}

void DenseLp::move_nonbasic(std::size_t q, double delta) {
  for (std::size_t i = 0; i < tableau_.size(); ++i) beta_[i] -= tableau_[i][q] * delta;
}

LpStatus DenseLp::primal_simplex(std::size_t max_iterations) {
  std::size_t degenerate = 0;
  const double ftol = feasibility_tol * scale_;
  for (;;) {
    if (iterations_ >= max_iterations) return LpStatus::IterationLimit;
    const bool bland = degenerate > degenerate_switch;

    std::size_t q = state_.size();
    double best = 0.0;
    for (std::size_t j = 0; j < state_.size(); ++j) {
      double score = 0.0;
      if (state_[j] == State::AtLower && d_[j] > optimality_tol) score = d_[j];
      else if (state_[j] == State::AtUpper && d_[j] < -optimality_tol) score = -d_[j];
      else continue;
      if (bland) {
        q = j;
        break;
      }
      if (score > best) {
        best = score;
        q = j;
      }
    }
    if (q == state_.size()) return LpStatus::Optimal;
    ++iterations_;

    const double s = state_[q] == State::AtLower ? 1.0 : -1.0;
    double theta = upper_of(q);
    std::size_t r = basis_.size();
    bool to_upper = false;
    double r_alpha = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const double a = s * tableau_[i][q];
      double ti = 0.0;
      bool up = false;
      if (a > pivot_tol) {
        ti = std::max(beta_[i], 0.0) / a;
      } else if (a < -pivot_tol) {
        const double ub = upper_of(basis_[i]);
        if (std::isinf(ub)) continue;
        ti = std::max(ub - beta_[i], 0.0) / (-a);
        up = true;
      } else {
        continue;
      }
      bool take = false;
      if (ti < theta - ftol * 1e-3) {
        take = true;
      } else if (ti <= theta + ftol * 1e-3 && r < basis_.size()) {
        take = bland ? basis_[i] < basis_[r] : std::abs(a) > std::abs(r_alpha);
      }
      if (take) {
        theta = ti;
        r = i;
        to_upper = up;
        r_alpha = a;
      }
    }
    if (std::isinf(theta)) return LpStatus::Unbounded;
    degenerate = theta <= ftol ? degenerate + 1 : 0;

    const double old_val = state_[q] == State::AtLower ? 0.0 : upper_of(q);
    move_nonbasic(q, s * theta);
    if (r == basis_.size()) {
      state_[q] = state_[q] == State::AtLower ? State::AtUpper : State::AtLower;
      continue;
    }
    const std::size_t leaving = basis_[r];
    pivot(r, q);
    beta_[r] = old_val + s * theta;
    state_[leaving] = to_upper ? State::AtUpper : State::AtLower;
  }
}

LpStatus DenseLp::dual_simplex(std::size_t max_iterations) {
  const double ftol = feasibility_tol * scale_;
  for (;;) {
    if (iterations_ >= max_iterations) return LpStatus::IterationLimit;
    std::size_t r = basis_.size();
    double worst = ftol;
    bool to_lower = true;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const double below = -beta_[i];
      const double above = beta_[i] - upper_of(basis_[i]);
      if (below > worst) {
        worst = below;
        r = i;
        to_lower = true;
      }
      if (above > worst) {
        worst = above;
        r = i;
        to_lower = false;
      }
    }
    if (r == basis_.size()) return LpStatus::Optimal;
    ++iterations_;

    const auto& tr = tableau_[r];
    std::size_t q = state_.size();
    double best_ratio = kInf;
    double best_abs = 0.0;
    for (std::size_t j = 0; j < state_.size(); ++j) {
      if (state_[j] == State::Basic) continue;
      const double a = tr[j];
      bool ok = false;
      if (to_lower) {
        ok = (state_[j] == State::AtLower && a < -pivot_tol) || (state_[j] == State::AtUpper && a > pivot_tol);
      } else {
        ok = (state_[j] == State::AtLower && a > pivot_tol) || (state_[j] == State::AtUpper && a < -pivot_tol);
      }
      if (!ok) continue;
      const double ratio = std::abs(d_[j]) / std::abs(a);
      if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && std::abs(a) > best_abs)) {
        best_ratio = ratio;
        best_abs = std::abs(a);
        q = j;
      }
    }
    if (q == state_.size()) return LpStatus::Infeasible;

    const std::size_t leaving = basis_[r];
    const double target = to_lower ? 0.0 : upper_of(leaving);
    const double delta = (beta_[r] - target) / tr[q];
    const double old_val = state_[q] == State::AtLower ? 0.0 : upper_of(q);
    move_nonbasic(q, delta);
    pivot(r, q);
    beta_[r] = old_val + delta;
    state_[leaving] = to_lower ? State::AtLower : State::AtUpper;
  }
}

LpStatus DenseLp::solve(std::size_t max_iterations) {
  scale_ = 1.0;
  for (double b : rhs_) scale_ = std::max(scale_, std::abs(b));
  const std::size_t cap = iterations_ + max_iterations;
  if (!primal_feasible()) {
    if (!dual_feasible()) throw std::logic_error("DenseLp: starting basis neither primal nor dual feasible");
    const auto st = dual_simplex(cap);
    if (st != LpStatus::Optimal) return st;
  }
  return primal_simplex(cap);
}

}  // namespace tlab
