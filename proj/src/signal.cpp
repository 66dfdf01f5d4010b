#include "tlab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "tlab/error.hpp"

namespace tlab {

DiscreteSignal::DiscreteSignal(std::int64_t lo, std::vector<double> values)
    : lo_(lo), values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("non-finite signal value at n = " +
                            std::to_string(lo_ + static_cast<std::int64_t>(i)));
    }
  }
  if (values_.empty()) lo_ = 0;
}

DiscreteSignal DiscreteSignal::delta(std::int64_t n, double value) {
  return DiscreteSignal(n, {value});
}

DiscreteSignal DiscreteSignal::interval_indicator(std::int64_t n_max) {
  if (n_max < 1) return {};
  return DiscreteSignal(1, std::vector<double>(static_cast<std::size_t>(n_max), 1.0));
}

DiscreteSignal DiscreteSignal::indicator(std::span<const std::int64_t> points) {
  if (points.empty()) return {};
  const auto [mn, mx] = std::minmax_element(points.begin(), points.end());
  std::vector<double> v(static_cast<std::size_t>(*mx - *mn + 1), 0.0);
  for (std::int64_t p : points) v[static_cast<std::size_t>(p - *mn)] = 1.0;
  return DiscreteSignal(*mn, std::move(v));
}

std::int64_t DiscreteSignal::max_abs_index() const {
  if (empty()) return 0;
  return std::max(std::abs(lo_), std::abs(hi()));
}

DiscreteSignal DiscreteSignal::trimmed() const {
  std::size_t a = 0;
  std::size_t b = values_.size();
  while (a < b && values_[a] == 0.0) ++a;
  while (b > a && values_[b - 1] == 0.0) --b;
  if (a == b) return {};
  return DiscreteSignal(lo_ + static_cast<std::int64_t>(a),
                        std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(a),
                                            values_.begin() + static_cast<std::ptrdiff_t>(b)));
}

DiscreteSignal DiscreteSignal::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return DiscreteSignal(lo_, std::move(v));
}

DiscreteSignal DiscreteSignal::shifted(std::int64_t by) const {
  if (empty()) return {};
  return DiscreteSignal(lo_ + by, values_);
}

DiscreteSignal DiscreteSignal::reflected() const {
  if (empty()) return {};
  std::vector<double> v(values_.rbegin(), values_.rend());
  return DiscreteSignal(-hi(), std::move(v));
}

DiscreteSignal DiscreteSignal::dilated(std::int64_t c) const {
  if (c == 0) throw ValidationError("dilation factor must be nonzero");
  if (empty()) return {};
  const std::int64_t a = c > 0 ? c * lo_ : c * hi();
  const std::int64_t b = c > 0 ? c * hi() : c * lo_;
  std::vector<double> v(static_cast<std::size_t>(b - a + 1), 0.0);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const std::int64_t m = c * (lo_ + static_cast<std::int64_t>(i));
    v[static_cast<std::size_t>(m - a)] = values_[i];
  }
  return DiscreteSignal(a, std::move(v));
}

DiscreteSignal DiscreteSignal::clamped(double lo_val, double hi_val) const {
  std::vector<double> v(values_);
  for (double& x : v) x = std::clamp(x, lo_val, hi_val);
  return DiscreteSignal(lo_, std::move(v));
}

DiscreteSignal DiscreteSignal::restricted(std::int64_t a, std::int64_t b) const {
  const std::int64_t s = std::max(a, lo_);
  const std::int64_t e = std::min(b, hi());
  if (s > e) return {};
  return DiscreteSignal(s, std::vector<double>(values_.begin() + (s - lo_), values_.begin() + (e - lo_ + 1)));
}

std::vector<std::int64_t> DiscreteSignal::support_points() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0.0) out.push_back(lo_ + static_cast<std::int64_t>(i));
  }
  return out;
}

namespace {

template <typename Op>
DiscreteSignal combine(const DiscreteSignal& a, const DiscreteSignal& b, Op op) {
  if (a.empty() && b.empty()) return {};
  const std::int64_t lo = a.empty() ? b.lo() : (b.empty() ? a.lo() : std::min(a.lo(), b.lo()));
  const std::int64_t hi = a.empty() ? b.hi() : (b.empty() ? a.hi() : std::max(a.hi(), b.hi()));
  std::vector<double> v(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) v[static_cast<std::size_t>(n - lo)] = op(a(n), b(n));
  return DiscreteSignal(lo, std::move(v));
}

}  // namespace

DiscreteSignal operator+(const DiscreteSignal& a, const DiscreteSignal& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

DiscreteSignal operator-(const DiscreteSignal& a, const DiscreteSignal& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

DiscreteSignal operator*(const DiscreteSignal& a, const DiscreteSignal& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}

bool operator==(const DiscreteSignal& a, const DiscreteSignal& b) {
  if (a.empty() || b.empty()) {
    const auto& ne = a.empty() ? b : a;
    return std::all_of(ne.values().begin(), ne.values().end(), [](double x) { return x == 0.0; });
  }
  const std::int64_t lo = std::min(a.lo(), b.lo());
  const std::int64_t hi = std::max(a.hi(), b.hi());
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (a(n) != b(n)) return false;
  }
  return true;
}

FrequencyGrid::FrequencyGrid(std::int64_t m) : m_(m) {
  if (m < 1) throw ValidationError("frequency grid needs M >= 1");
}

FrequencyGrid FrequencyGrid::default_for(std::size_t support_length) {
  return FrequencyGrid(std::max<std::int64_t>(4096, 8 * static_cast<std::int64_t>(support_length)));
}

cplx fourier_eval(const DiscreteSignal& f, double alpha) {
  CompensatedComplexSum acc;
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    acc.add(v[i] * phase_at(alpha, f.lo() + static_cast<std::int64_t>(i)));
  }
  return acc.value();
}

std::vector<cplx> fourier_grid(const DiscreteSignal& f, const FrequencyGrid& grid) {
  const std::int64_t m = grid.size();
  std::vector<double> folded(static_cast<std::size_t>(m), 0.0);
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::int64_t r = (f.lo() + static_cast<std::int64_t>(i)) % m;
    if (r < 0) r += m;
    folded[static_cast<std::size_t>(r)] += v[i];
  }
  return detail::dft_positive(folded);
}

DiscreteSignal convolve_direct(const DiscreteSignal& f, const DiscreteSignal& g) {
  if (f.empty() || g.empty()) return {};
  const auto a = f.values();
  const auto b = g.values();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return DiscreteSignal(f.lo() + g.lo(), std::move(out));
}

DiscreteSignal convolve(const DiscreteSignal& f, const DiscreteSignal& g, const ConvolutionLimits& limits) {
  if (f.empty() || g.empty()) return {};
  const std::size_t out_len = f.length() + g.length() - 1;
  if (out_len > limits.max_output_length) {
    throw ResourceError("convolution output length " + std::to_string(out_len) + " exceeds cap " +
                        std::to_string(limits.max_output_length));
  }
  if (std::max(f.length(), g.length()) < limits.fft_threshold) return convolve_direct(f, g);
  auto out = detail::fft_convolve(f.values(), g.values());
  const auto nonneg = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0; });
  };
  // FFT rounding can leave values like -1e-17 where the exact result is >= 0.
  if (nonneg(f.values()) && nonneg(g.values())) {
    for (double& x : out) x = std::max(x, 0.0);
  }
  return DiscreteSignal(f.lo() + g.lo(), std::move(out));
}

double lp_norm(const DiscreteSignal& f, double p) {
  if (!(p >= 1.0)) throw ValidationError("L^p norm needs p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
  }
  CompensatedSum acc;
  if (p == 1.0) {
    for (double x : f.values()) acc += std::abs(x);
    return acc.value();
  }
  if (p == 2.0) {
    for (double x : f.values()) acc += x * x;
    return std::sqrt(acc.value());
  }
  for (double x : f.values()) acc += std::pow(std::abs(x), p);
  return std::pow(acc.value(), 1.0 / p);
}

double sum(const DiscreteSignal& f) {
  CompensatedSum acc;
  for (double x : f.values()) acc += x;
  return acc.value();
}

CertifiedSup fourier_sup(const DiscreteSignal& f, const FrequencyGrid& grid) {
  CertifiedSup out;
  if (f.empty()) return out;
  const auto vals = fourier_grid(f, grid);
  for (std::size_t j = 0; j < vals.size(); ++j) {
    const double a = std::abs(vals[j]);
    if (a > out.grid_max) {
      out.grid_max = a;
      out.argmax = static_cast<std::int64_t>(j);
    }
  }
  const double h = static_cast<double>(f.max_abs_index());
  out.lipschitz_slack = kTwoPi * h * lp_norm(f, 1.0) * grid.lipschitz_radius();
  out.certified_lower = out.grid_max;
  out.certified_upper = out.grid_max + out.lipschitz_slack;
  return out;
}

CertifiedSup fourier_sup_diff(const DiscreteSignal& f, const DiscreteSignal& g, const FrequencyGrid& grid) {
  if (grid.size() < 2) throw ValidationError("sup certificate needs a grid with M >= 2");
  return fourier_sup(f - g, grid);
}

}  // namespace tlab
