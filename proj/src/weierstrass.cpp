#include "tlab/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "tlab/error.hpp"

namespace tlab {

namespace mp = boost::multiprecision;

long double taylor_coeff_ld(int n) {
  if (n < 0) throw ValidationError("Taylor coefficient index must be >= 0");
  long double c = -1.0L;
  for (int k = 0; k < n; ++k) c *= static_cast<long double>(2 * k - 1) / static_cast<long double>(2 * k + 2);
  return c;
}

double taylor_coeff(int n) { return static_cast<double>(taylor_coeff_ld(n)); }

namespace {

mp::cpp_rational closed_form(int n) {
  mp::cpp_int f2n = 1;
  for (int k = 2; k <= 2 * n; ++k) f2n *= k;
  mp::cpp_int fn = 1;
  for (int k = 2; k <= n; ++k) fn *= k;
  const mp::cpp_int den = mp::cpp_int(std::abs(2 * n - 1)) * (mp::cpp_int(1) << (2 * n)) * fn * fn;
  return n == 0 ? mp::cpp_rational(-f2n, den) : mp::cpp_rational(f2n, den);
}

}  // namespace

Rational taylor_coeff_exact(int n) {
  if (n < 0) throw ValidationError("Taylor coefficient index must be >= 0");
  const auto q = closed_form(n);
  return {mp::numerator(q).str(), mp::denominator(q).str()};
}

bool taylor_recurrence_matches_closed_form(int n_max) {
  mp::cpp_rational c = -1;
  for (int n = 0; n <= n_max; ++n) {
    if (c != closed_form(n)) return false;
    c *= mp::cpp_rational(mp::cpp_int(2 * n - 1)) / mp::cpp_rational(mp::cpp_int(2 * n + 2));
  }
  return true;
}

long double PolyApprox::eval(long double x) const {
  long double acc = 0.0L;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + static_cast<long double>(*it);
  return acc;
}

namespace {

double abs_target(double x) { return std::abs(x); }
double pos_target(double x) { return std::max(x, 0.0); }

void finish(PolyApprox& p) {
  p.degree = 0;
  for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
    if (p.coefficients[i] != 0.0) p.degree = static_cast<int>(i);
  }
  p.height = 0.0;
  for (double c : p.coefficients) p.height = std::max(p.height, std::abs(c));
}

std::vector<long double> abs_coefficients(int n_terms) {
  std::vector<long double> c(static_cast<std::size_t>(n_terms) + 1);
  for (int n = 0; n <= n_terms; ++n) c[static_cast<std::size_t>(n)] = taylor_coeff_ld(n);
  std::vector<long double> a(2 * static_cast<std::size_t>(n_terms) + 1, 0.0L);
  for (int m = 0; m <= n_terms; ++m) {
    long double s = 0.0L;
    long double binom = 1.0L;  // C(n, m), starting at n = m
    for (int n = m; n <= n_terms; ++n) {
      s += c[static_cast<std::size_t>(n)] * binom;
      binom = binom * static_cast<long double>(n + 1) / static_cast<long double>(n + 1 - m);
    }
    a[2 * static_cast<std::size_t>(m)] = (m % 2 == 0 ? -s : s);
  }
  return a;
}

}  // namespace

SupCertificate certify_sup_error(const PolyApprox& p, double (*target)(double), std::size_t samples) {
  if (samples < 2) throw ValidationError("certificate needs at least 2 samples");
  SupCertificate c;
  c.samples = samples;
  const long double h = 2.0L / static_cast<long double>(samples - 1);
  long double pmax = 0.0L;
  long double emax = 0.0L;
  for (std::size_t i = 0; i < samples; ++i) {
    const long double x = i + 1 == samples ? 1.0L : -1.0L + h * static_cast<long double>(i);
    const long double v = p.eval(x);
    pmax = std::max(pmax, std::abs(v));
    emax = std::max(emax, std::abs(v - static_cast<long double>(target(static_cast<double>(x)))));
  }
  // Horner in long double: error <= gamma_{2d} sum |a_i| on [-1, 1].
  long double abs_sum = 0.0L;
  for (double a : p.coefficients) abs_sum += std::abs(static_cast<long double>(a));
  const long double u = std::numeric_limits<long double>::epsilon() / 2.0L;
  const long double d2 = 2.0L * static_cast<long double>(std::max(p.degree, 1));
  const long double rounding = d2 * u / (1.0L - d2 * u) * abs_sum;

  const long double deg2 = static_cast<long double>(p.degree) * static_cast<long double>(p.degree);
  const long double half = h / 2.0L;
  const long double denom = 1.0L - deg2 * half;
  if (denom <= 0.0L) throw ValidationError("too few samples for the Markov certificate at this degree");
  const long double pnorm = (pmax + rounding) / denom;
  c.sample_max = static_cast<double>(emax);
  c.rounding_slack = static_cast<double>(rounding);
  c.lipschitz_slack = static_cast<double>((deg2 * pnorm + 1.0L) * half);
  c.certified = static_cast<double>(emax + rounding + (deg2 * pnorm + 1.0L) * half);
  return c;
}

PolyApprox build_abs_approx(int n_terms, std::size_t samples) {
  if (n_terms < 1 || n_terms > kMaxTerms) {
    throw ValidationError("N_terms must lie in [1, " + std::to_string(kMaxTerms) + "]");
  }
  PolyApprox p;
  p.n_terms = n_terms;
  for (long double a : abs_coefficients(n_terms)) p.coefficients.push_back(static_cast<double>(a));
  finish(p);
  p.certificate = certify_sup_error(p, abs_target, samples);
  p.measured_sup_error = p.certificate.certified;
  return p;
}

PolyApprox positive_part_for_terms(int n_terms, std::size_t samples) {
  if (n_terms < 1 || n_terms > kMaxTerms) {
    throw ValidationError("N_terms must lie in [1, " + std::to_string(kMaxTerms) + "]");
  }
  PolyApprox p;
  p.n_terms = n_terms;
  const auto a = abs_coefficients(n_terms);
  p.coefficients.resize(std::max<std::size_t>(a.size(), 2), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) p.coefficients[i] = static_cast<double>(a[i] / 2.0L);
  p.coefficients[1] += 0.5;
  finish(p);
  p.certificate = certify_sup_error(p, pos_target, samples);
  p.measured_sup_error = p.certificate.certified;
  return p;
}

PolyApprox build_positive_part(double eps, std::size_t samples) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0, 1)");
  if (eps < 0.02) throw ValidationError("eps below 0.02 is outside the supported range");
  double best = std::numeric_limits<double>::infinity();
  int best_n = 0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    auto p = positive_part_for_terms(n, samples);
    if (p.measured_sup_error <= eps) {
      p.target_eps = eps;
      return p;
    }
    if (p.measured_sup_error < best) {
      best = p.measured_sup_error;
      best_n = n;
    }
  }
  throw CertificationError("no N_terms <= " + std::to_string(kMaxTerms) + " certifies eps = " + std::to_string(eps) +
                           "; smallest achievable eps is " + std::to_string(best) + " at N_terms = " +
                           std::to_string(best_n));
}

double loglog_slope(const std::vector<double>& n, const std::vector<double>& err) {
  if (n.size() != err.size() || n.size() < 2) throw ValidationError("slope needs at least two matching points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    mx += std::log(n[i]);
    my += std::log(err[i]);
  }
  mx /= static_cast<double>(n.size());
  my /= static_cast<double>(n.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double dx = std::log(n[i]) - mx;
    sxy += dx * (std::log(err[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace tlab
