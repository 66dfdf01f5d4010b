#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tlab/numeric.hpp"

namespace tlab {

/// A finitely supported real function on Z. Values outside the window
/// [lo, hi] are zero. The empty signal has lo = 0, hi = -1.
class DiscreteSignal {
public:
  DiscreteSignal() = default;

  /// Takes ownership of values indexed from lo. Throws ValidationError on
  /// non-finite entries.
  DiscreteSignal(std::int64_t lo, std::vector<double> values);

  static DiscreteSignal zero() { return {}; }
  static DiscreteSignal delta(std::int64_t n, double value = 1.0);
  /// Indicator of [1, N].
  static DiscreteSignal interval_indicator(std::int64_t n_max);
  /// Indicator of an arbitrary set of integers.
  static DiscreteSignal indicator(std::span<const std::int64_t> points);

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(values_.size()) - 1; }
  std::size_t length() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::span<const double> values() const { return values_; }

  double operator()(std::int64_t n) const {
    if (n < lo_ || n > hi()) return 0.0;
    return values_[static_cast<std::size_t>(n - lo_)];
  }

  /// Largest |n| over the window; 0 for the empty signal.
  std::int64_t max_abs_index() const;

  /// Shrinks the window to the outermost nonzero entries.
  DiscreteSignal trimmed() const;

  DiscreteSignal scaled(double c) const;
  DiscreteSignal shifted(std::int64_t by) const;
  /// n -> f(-n).
  DiscreteSignal reflected() const;
  /// m -> f(m / c) when c | m, else 0. c must be nonzero.
  DiscreteSignal dilated(std::int64_t c) const;
  /// Pointwise clamp into [lo_val, hi_val].
  DiscreteSignal clamped(double lo_val, double hi_val) const;
  /// Restriction to [a, b].
  DiscreteSignal restricted(std::int64_t a, std::int64_t b) const;

  /// Indices with nonzero value, increasing.
  std::vector<std::int64_t> support_points() const;

  friend DiscreteSignal operator+(const DiscreteSignal& a, const DiscreteSignal& b);
  friend DiscreteSignal operator-(const DiscreteSignal& a, const DiscreteSignal& b);
  /// Pointwise product.
  friend DiscreteSignal operator*(const DiscreteSignal& a, const DiscreteSignal& b);
  friend bool operator==(const DiscreteSignal& a, const DiscreteSignal& b);

private:
  std::int64_t lo_ = 0;
  std::vector<double> values_;
};

/// M equally spaced frequencies j/M on the circle.
class FrequencyGrid {
public:
  explicit FrequencyGrid(std::int64_t m);

  /// max(4096, 8 * support length).
  static FrequencyGrid default_for(std::size_t support_length);

  std::int64_t size() const { return m_; }
  double point(std::int64_t j) const { return static_cast<double>(j) / static_cast<double>(m_); }
  /// Every alpha is within this distance of a grid point.
  double lipschitz_radius() const { return 0.5 / static_cast<double>(m_); }

private:
  std::int64_t m_;
};

struct CertifiedSup {
  double grid_max = 0.0;
  double lipschitz_slack = 0.0;
  double certified_lower = 0.0;
  double certified_upper = 0.0;
  /// Grid index attaining grid_max.
  std::int64_t argmax = 0;
};

/// Configurable limits for convolution.
struct ConvolutionLimits {
  std::size_t fft_threshold = 512;
  std::size_t max_output_length = std::size_t{1} << 26;
};

/// f^(alpha) = sum_n f(n) e(alpha n), compensated.
cplx fourier_eval(const DiscreteSignal& f, double alpha);

/// f^ at every point of the grid, via FFT with the support folded mod M.
std::vector<cplx> fourier_grid(const DiscreteSignal& f, const FrequencyGrid& grid);

/// Exact linear convolution: direct below the FFT threshold, zero-padded
/// FFT above. Throws ResourceError past max_output_length.
DiscreteSignal convolve(const DiscreteSignal& f, const DiscreteSignal& g,
                        const ConvolutionLimits& limits = {});

/// Direct O(n m) convolution, used below the FFT threshold.
DiscreteSignal convolve_direct(const DiscreteSignal& f, const DiscreteSignal& g);

/// Counting-measure L^p norm; p = infinity allowed. Throws on p < 1.
double lp_norm(const DiscreteSignal& f, double p);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

double sum(const DiscreteSignal& f);

/// Certified sup of |f^ - g^| over the circle: grid maximum plus the
/// Lipschitz slack 2 pi H ||f - g||_1 / (2M), H = max |n| on the joint support.
CertifiedSup fourier_sup_diff(const DiscreteSignal& f, const DiscreteSignal& g,
                              const FrequencyGrid& grid);

/// Same certificate for a single signal (g = 0).
CertifiedSup fourier_sup(const DiscreteSignal& f, const FrequencyGrid& grid);

}  // namespace tlab
