#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tlab/signal.hpp"

namespace tlab {

using Point = std::vector<double>;

double dot(const Point& a, const Point& b);

/// Convex hull of finitely many points, stored as its generators.
class PointHull {
public:
  explicit PointHull(std::vector<Point> generators);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<Point>& generators() const { return gens_; }
  const Point& operator[](std::size_t i) const { return gens_[i]; }
  /// sum_i w_i a_i.
  Point combine(const std::vector<double>& weights) const;

private:
  std::size_t dim_ = 0;
  std::vector<Point> gens_;
};

struct HyperplaneWitness {
  /// phi = x - y0.
  Point normal;
  /// x . phi
  double anchor_value = 0.0;
  Point projection;
  double distance = 0.0;
  /// max_i (a_i . phi) - x . phi, negative when the separation is strict.
  double max_violation = 0.0;
};

struct ProjectionResult {
  Point y0;
  /// Convex weights on the generators with y0 = sum w_i a_i.
  std::vector<double> weights;
  double distance = 0.0;
  /// Final Frank-Wolfe gap (an upper bound on the suboptimality of |x-y|^2/2).
  double gap = 0.0;
  bool inside = false;
  bool converged = false;
  std::size_t iterations = 0;
  /// max_i (x - y0).(a_i - y0); <= 0 at the exact projection.
  double obtuse_max = 0.0;
  std::optional<HyperplaneWitness> witness;
};

/// Nearest point of hull(A) to x by Frank-Wolfe with away steps.
ProjectionResult project_onto_hull(const Point& x, const PointHull& a, double tol = 1e-8,
                                   std::size_t max_iterations = 200000);

struct SaddleResult {
  Point a_star;
  Point b_star;
  std::vector<double> a_weights;
  std::vector<double> b_weights;
  double value = 0.0;
  /// max_i a_i . b_star - min_j a_star . b_j.
  double gap = 0.0;
};

/// Saddle point of (a, b) -> a . b over hull(A) x hull(B): a . b_star <= value <= a_star . b.
SaddleResult minimax_solve(const PointHull& a, const PointHull& b, double tol = 1e-8);

/// Value and optimal mixed strategies of the matrix game in which the row
/// player maximizes and the column player minimizes.
SaddleResult solve_matrix_game(const std::vector<std::vector<double>>& payoff);

/// phi = re + i im on [1, N].
struct ComplexSignal {
  DiscreteSignal re;
  DiscreteSignal im;
};

struct DualNormBounds {
  /// Weak-duality bound on the grid relaxation; >= ||phi||*.
  double upper = 0.0;
  /// max(||phi||_inf, ||phi||_2^2 / certified ||phi^||_inf); <= ||phi||*.
  double lower = 0.0;
  /// LP optimum of the final relaxation.
  double lp_value = 0.0;
  std::size_t rows = 0;
  std::size_t rounds = 0;
  bool converged = false;
};

/// Bounds on sup{|<f, phi>| : ||f^||_inf <= 1} from the D-direction grid relaxation. Needs M >= N.
DualNormBounds dual_norm_upper(const ComplexSignal& phi, std::int64_t n, const FrequencyGrid& grid,
                               int directions = 16, std::size_t max_rounds = 200);

/// (psi_+, 1_{psi >= 0}).
std::pair<DiscreteSignal, DiscreteSignal> positive_part_split(const DiscreteSignal& psi);

}  // namespace tlab
