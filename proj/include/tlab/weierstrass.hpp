#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tlab {

/// c_n of (1 - t)^(1/2) = -sum_n c_n t^n, by the ratio c_{n+1}/c_n = (2n-1)/(2n+2).
double taylor_coeff(int n);
long double taylor_coeff_ld(int n);

/// c_n = (2n)! / ((2n-1) 4^n (n!)^2) as a reduced fraction, in decimal.
struct Rational {
  std::string numerator;
  std::string denominator;
};
Rational taylor_coeff_exact(int n);

/// True iff the ratio recurrence reproduces the closed form exactly in
/// rational arithmetic for every n <= n_max.
bool taylor_recurrence_matches_closed_form(int n_max);

struct SupCertificate {
  std::size_t samples = 0;
  double sample_max = 0.0;
  /// Markov bound on |P'| times the half spacing, plus the target's Lipschitz term.
  double lipschitz_slack = 0.0;
  /// Worst-case Horner rounding error over [-1, 1].
  double rounding_slack = 0.0;
  double certified = 0.0;
};

struct PolyApprox {
  /// Monomial coefficients, index = power.
  std::vector<double> coefficients;
  int degree = 0;
  int n_terms = 0;
  double height = 0.0;
  double target_eps = 0.0;
  /// Certified sup error on [-1, 1].
  double measured_sup_error = 0.0;
  SupCertificate certificate;

  long double eval(long double x) const;
};

inline constexpr int kMaxTerms = 60;
inline constexpr std::size_t kDefaultSamples = 100001;

/// P_N(x) ~ |x| on [-1, 1]; 1 <= n_terms <= 60. Certified against |x|.
PolyApprox build_abs_approx(int n_terms, std::size_t samples = kDefaultSamples);

/// P = (P_N + x) / 2 with the smallest N whose certified error against x_+
/// is <= eps. Throws CertificationError naming the best achievable error
/// when no N <= 60 works.
PolyApprox build_positive_part(double eps, std::size_t samples = kDefaultSamples);

/// (P_N + x) / 2 for a given N, certified against x_+.
PolyApprox positive_part_for_terms(int n_terms, std::size_t samples = kDefaultSamples);

/// Sampling + Markov certificate of sup_{|x| <= 1} |P(x) - target(x)| for a
/// 1-Lipschitz target.
SupCertificate certify_sup_error(const PolyApprox& p, double (*target)(double), std::size_t samples);

/// Least-squares slope of log(error) against log(N).
double loglog_slope(const std::vector<double>& n, const std::vector<double>& err);

}  // namespace tlab
