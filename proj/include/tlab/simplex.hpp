#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace tlab {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

/// Dense bounded-variable tableau simplex for
///
///   maximize c.x  subject to  A x <= b,  0 <= x_j <= u_j  (u_j may be +inf).
///
/// Rows can be appended after a solve; the next solve warm-starts with the
/// dual simplex from the previous optimal basis. A cold start needs either
/// b >= 0 (slack basis primal feasible) or c <= 0 (slack basis dual feasible).
/// Pricing is Dantzig's largest reduced cost, falling back to Bland's rule
/// after a run of degenerate pivots.
class DenseLp {
public:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  DenseLp(std::vector<double> objective, std::vector<double> upper);

  std::size_t num_vars() const { return n_; }
  std::size_t num_rows() const { return rows_.size(); }

  void add_row(std::span<const double> coeffs, double rhs);

  LpStatus solve(std::size_t max_iterations = 200000);

  /// Structural variable values at the current basis.
  std::vector<double> primal() const;
  double objective_value() const;
  /// Row multipliers y >= 0 (zero for rows whose slack is basic).
  std::vector<double> row_duals() const;
  std::size_t iterations() const { return iterations_; }

  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-10;
  std::size_t degenerate_switch = 50;

private:
  enum class State : unsigned char { Basic, AtLower, AtUpper };

  double upper_of(std::size_t j) const { return j < n_ ? upper_[j] : kInf; }
  double value_of(std::size_t j) const;
  bool primal_feasible() const;
  bool dual_feasible() const;
  LpStatus primal_simplex(std::size_t max_iterations);
  LpStatus dual_simplex(std::size_t max_iterations);
  void pivot(std::size_t r, std::size_t q);
  void move_nonbasic(std::size_t q, double delta);

  std::size_t n_;
  std::vector<double> c_;
  std::vector<double> upper_;
  std::vector<std::vector<double>> rows_;      // original coefficients
  std::vector<double> rhs_;
  std::vector<std::vector<double>> tableau_;   // B^-1 [A I]
  std::vector<double> beta_;                   // basic values
  std::vector<std::size_t> basis_;
  std::vector<State> state_;
  std::vector<double> d_;                      // reduced costs
  std::size_t iterations_ = 0;
  double scale_ = 1.0;
};

}  // namespace tlab
