#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace tlab {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// Fractional part in [0,1).
inline double frac(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

/// e(x) = exp(2 pi i x), argument reduced mod 1 first.
inline cplx unit_phase(double x) {
  const double t = kTwoPi * frac(x);
  return {std::cos(t), std::sin(t)};
}

/// Phase e(alpha n) with the product reduced in long double to keep
/// precision for large |n|.
inline cplx phase_at(double alpha, std::int64_t n) {
  long double p = static_cast<long double>(alpha) * static_cast<long double>(n);
  p -= std::floor(p);
  const double t = kTwoPi * static_cast<double>(p);
  return {std::cos(t), std::sin(t)};
}

/// Distance to the nearest integer, ||x||. Rounds half to even.
inline double dist_to_int(double x) { return std::abs(x - std::nearbyint(x)); }

/// ||alpha n|| with the product formed in long double.
inline double dist_to_int(double alpha, std::int64_t n) {
  long double p = static_cast<long double>(alpha) * static_cast<long double>(n);
  return static_cast<double>(std::abs(p - std::nearbyint(p)));
}

/// Deterministic, platform-independent uniform double in [0,1) from a
/// 64-bit generator word.
inline double to_unit(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace tlab
