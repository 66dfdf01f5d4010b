#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tlab/signal.hpp"

namespace tlab {

/// A non-negative weight on [1, N] with total mass in [N/2, 2N].
class Majorant {
public:
  /// Validates non-negativity, support inside [1, N] and the mass window.
  Majorant(DiscreteSignal signal, std::int64_t n, std::string kind = "custom");

  const DiscreteSignal& signal() const { return signal_; }
  std::int64_t N() const { return n_; }
  double l1_mass() const { return l1_mass_; }
  const std::string& kind() const { return kind_; }

  /// Set by make_random_sparse when the first draw was empty.
  bool resampled() const { return resampled_; }
  std::uint64_t seed_used() const { return seed_used_; }

private:
  friend Majorant make_random_sparse(std::int64_t, double, std::uint64_t);

  DiscreteSignal signal_;
  std::int64_t n_;
  double l1_mass_;
  std::string kind_;
  bool resampled_ = false;
  std::uint64_t seed_used_ = 0;
};

/// nu = 1_[N].
Majorant make_uniform(std::int64_t n);

/// nu = (N/|S|) 1_S with each n in [N] kept independently with probability
/// N^(exponent - 1).
Majorant make_random_sparse(std::int64_t n, double density_exponent, std::uint64_t seed);

/// nu(m^2) = 2m for m^2 <= N.
Majorant make_squares(std::int64_t n);

/// nu(p) proportional to log p on primes p <= N, total mass exactly N.
Majorant make_weighted_primes(std::int64_t n);

struct DiagnoseOptions {
  int k_max = 3;
  std::vector<double> p_list{4.0};
  /// Tuple budget for correlation maxima: exhaustive at or below it.
  std::size_t shift_samples = 100000;
  /// Random-sign test functions tried for the restriction estimate.
  std::size_t restriction_samples = 8;
  std::uint64_t seed = 1;
};

struct MajorantDiagnostics {
  double theta_decay = 0.0;
  double theta_L2 = 0.0;
  double theta_Linf = 0.0;
  /// l -> max tested sum_n nu(n+m_1)...nu(n+m_l) / N over distinct shifts.
  std::map<int, double> corr;
  std::map<int, bool> corr_exhaustive;
  std::map<int, std::size_t> corr_tuples_tested;
  /// p -> sampled lower estimate of sup_{|phi|<=nu} int |phi^|^p, scaled by N/||nu||_1^p.
  std::map<double, double> restriction_estimate;
  std::size_t restriction_functions_tried = 0;
  CertifiedSup decay_sup;
  std::int64_t grid_m = 0;
  std::uint64_t seed = 0;
  std::size_t shift_samples = 0;
};

MajorantDiagnostics diagnose(const Majorant& nu, const FrequencyGrid& grid, const DiagnoseOptions& opts);

/// sum_n nu(n + m_1) ... nu(n + m_l) for the given shift tuple.
double correlation(const DiscreteSignal& nu, const std::vector<std::int64_t>& shifts);

/// Sampled restriction estimate for one exponent with a given number of
/// random-sign test functions (0 means nu alone).
double restriction_estimate(const Majorant& nu, const FrequencyGrid& grid, double p,
                            std::size_t random_functions, std::uint64_t seed);

}  // namespace tlab
