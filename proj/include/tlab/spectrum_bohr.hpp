#pragma once

#include <cstdint>
#include <vector>

#include "tlab/majorants.hpp"
#include "tlab/signal.hpp"

namespace tlab {

struct SpectrumOptions {
  std::int64_t m_cap = std::int64_t{1} << 22;
  /// Throw ResourceError instead of capping the grid.
  bool strict = false;
};

/// Grid cover of the large spectrum {alpha : |f^(alpha)| >= eta ||nu||_1}.
/// Interval i is [j_i/M, (j_i + 1)/M) and its representative is j_i/M.
struct SpectrumSet {
  double threshold = 0.0;
  double eta = 0.0;
  std::int64_t grid_m = 0;
  /// Uncapped size ceil(4 pi N / eta).
  std::int64_t requested_m = 0;
  bool capped = false;
  std::vector<std::int64_t> interval_index;
  std::vector<double> representatives;
  /// |f^| at each representative, re-evaluated directly.
  std::vector<double> magnitudes;

  std::size_t r() const { return representatives.size(); }
};

SpectrumSet spectrum(const DiscreteSignal& f, const Majorant& nu, double eta, const SpectrumOptions& opts = {});

/// B(S, eps) = {n in [-eps N, eps N] : ||n alpha|| <= eps for all alpha in S}.
struct BohrSet {
  std::vector<double> frequencies;
  double eps = 0.0;
  std::int64_t N = 0;
  std::vector<std::int64_t> elements;
  /// (1/2) eps N ceil(2/eps)^(-r); a guaranteed size only for half-width
  /// sets built from spectrum representatives.
  double pigeonhole_floor = 0.0;

  std::size_t size() const { return elements.size(); }
};

/// Absolute slack on ||n alpha|| <= eps to absorb rounding on rational alpha.
inline constexpr double kBohrTolerance = 1e-12;

BohrSet bohr_enumerate(const std::vector<double>& frequencies, double eps, std::int64_t n);

/// sigma = |B|^-1 1_B.
DiscreteSignal bohr_measure(const BohrSet& b);

/// (1/2) eps N ceil(2/eps)^(-r).
double pigeonhole_floor(double eps, std::int64_t n, std::size_t r);

}  // namespace tlab
