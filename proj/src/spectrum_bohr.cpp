#include "tlab/spectrum_bohr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tlab/error.hpp"

namespace tlab {

SpectrumSet spectrum(const DiscreteSignal& f, const Majorant& nu, double eta, const SpectrumOptions& opts) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("spectrum needs 0 < eta <= 1");
  if (!f.empty() && (f.lo() < 1 || f.hi() > nu.N())) {
    const auto t = f.trimmed();
    if (!t.empty() && (t.lo() < 1 || t.hi() > nu.N())) throw ValidationError("spectrum needs f supported in [1, N]");
  }
  SpectrumSet s;
  s.eta = eta;
  s.threshold = eta * nu.l1_mass();
  s.requested_m = static_cast<std::int64_t>(std::ceil(4.0 * std::numbers::pi * static_cast<double>(nu.N()) / eta));
  s.grid_m = s.requested_m;
  if (s.grid_m > opts.m_cap) {
    if (opts.strict) {
      throw ResourceError("spectrum grid M = " + std::to_string(s.requested_m) + " exceeds cap " +
                          std::to_string(opts.m_cap));
    }
    s.grid_m = opts.m_cap;
    s.capped = true;
  }
  if (f.empty()) return s;
  const FrequencyGrid grid(s.grid_m);
  const auto vals = fourier_grid(f, grid);
  for (std::int64_t j = 0; j < s.grid_m; ++j) {
    if (std::abs(vals[static_cast<std::size_t>(j)]) < s.threshold) continue;
    const double alpha = grid.point(j);
    // The FFT value decides inclusion; the direct evaluation confirms it.
    const double mag = std::abs(fourier_eval(f, alpha));
    if (mag < s.threshold) continue;
    s.interval_index.push_back(j);
    s.representatives.push_back(alpha);
    s.magnitudes.push_back(mag);
  }
  return s;
}

double pigeonhole_floor(double eps, std::int64_t n, std::size_t r) {
  const double t = std::ceil(2.0 / eps);
  return 0.5 * eps * static_cast<double>(n) * std::pow(t, -static_cast<double>(r));
}

BohrSet bohr_enumerate(const std::vector<double>& frequencies, double eps, std::int64_t n) {
  if (!(eps > 0.0 && eps <= 0.5)) throw ValidationError("Bohr width must lie in (0, 1/2]");
  if (n < 1) throw ValidationError("Bohr set needs N >= 1");
  BohrSet b;
  b.frequencies = frequencies;
  b.eps = eps;
  b.N = n;
  b.pigeonhole_floor = pigeonhole_floor(eps, n, frequencies.size());
  const auto radius = static_cast<std::int64_t>(std::floor(eps * static_cast<double>(n) + 1e-9));
  const double limit = eps + kBohrTolerance;
  // Scan non-negative n and mirror: ||(-n) alpha|| = ||n alpha||.
  std::vector<std::int64_t> pos;
  for (std::int64_t k = 0; k <= radius; ++k) {
    bool ok = true;
    for (double a : frequencies) {
      if (dist_to_int(a, k) > limit) {
        ok = false;
        break;
      }
    }
    if (ok) pos.push_back(k);
  }
  b.elements.reserve(2 * pos.size());
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
    if (*it != 0) b.elements.push_back(-*it);
  }
  b.elements.insert(b.elements.end(), pos.begin(), pos.end());
  return b;
}

DiscreteSignal bohr_measure(const BohrSet& b) {
  if (b.elements.empty()) throw ValidationError("Bohr measure of an empty set");
  const double w = 1.0 / static_cast<double>(b.elements.size());
  const std::int64_t lo = b.elements.front();
  std::vector<double> v(static_cast<std::size_t>(b.elements.back() - lo + 1), 0.0);
  for (std::int64_t n : b.elements) v[static_cast<std::size_t>(n - lo)] = w;
  return DiscreteSignal(lo, std::move(v));
}

}  // namespace tlab
