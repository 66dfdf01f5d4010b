#include "tlab/majorants.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "tlab/error.hpp"

namespace tlab {

Majorant::Majorant(DiscreteSignal signal, std::int64_t n, std::string kind)
    : signal_(std::move(signal)), n_(n), l1_mass_(0.0), kind_(std::move(kind)) {
  if (n_ < 1) throw ValidationError("majorant needs N >= 1");
  const auto v = signal_.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t idx = signal_.lo() + static_cast<std::int64_t>(i);
    if (v[i] < 0.0) throw ValidationError("majorant negative at n = " + std::to_string(idx));
    if (v[i] != 0.0 && (idx < 1 || idx > n_)) {
      throw ValidationError("majorant support outside [1, N] at n = " + std::to_string(idx));
    }
  }
  l1_mass_ = sum(signal_);
  const double nd = static_cast<double>(n_);
  if (l1_mass_ < 0.5 * nd || l1_mass_ > 2.0 * nd) {
    throw ValidationError("majorant mass " + std::to_string(l1_mass_) + " outside [N/2, 2N]");
  }
}

Majorant make_uniform(std::int64_t n) {
  if (n < 1) throw ValidationError("uniform majorant needs N >= 1");
  return Majorant(DiscreteSignal::interval_indicator(n), n, "uniform");
}

Majorant make_random_sparse(std::int64_t n, double density_exponent, std::uint64_t seed) {
  if (n < 4) throw ValidationError("sparse majorant needs N >= 4");
  if (!(density_exponent > 0.0 && density_exponent <= 1.0)) {
    throw ValidationError("density exponent must lie in (0, 1]");
  }
  const double prob = std::pow(static_cast<double>(n), density_exponent - 1.0);
  std::uint64_t s = seed;
  std::vector<std::int64_t> picked;
  bool resampled = false;
  for (;;) {
    std::mt19937_64 rng(s);
    picked.clear();
    for (std::int64_t k = 1; k <= n; ++k) {
      if (to_unit(rng()) < prob) picked.push_back(k);
    }
    if (!picked.empty()) break;
    resampled = true;
    ++s;
  }
  const double w = static_cast<double>(n) / static_cast<double>(picked.size());
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t k : picked) v[static_cast<std::size_t>(k - 1)] = w;
  Majorant out(DiscreteSignal(1, std::move(v)), n, "sparse");
  out.resampled_ = resampled;
  out.seed_used_ = s;
  return out;
}

Majorant make_squares(std::int64_t n) {
  if (n < 4) throw ValidationError("squares majorant needs N >= 4");
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t m = 1; m * m <= n; ++m) v[static_cast<std::size_t>(m * m - 1)] = 2.0 * static_cast<double>(m);
  return Majorant(DiscreteSignal(1, std::move(v)), n, "squares");
}

Majorant make_weighted_primes(std::int64_t n) {
  if (n < 10) throw ValidationError("primes majorant needs N >= 10");
  std::vector<char> composite(static_cast<std::size_t>(n + 1), 0);
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  CompensatedSum total;
  for (std::int64_t p = 2; p <= n; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t q = p * p; q <= n; q += p) composite[static_cast<std::size_t>(q)] = 1;
    const double w = std::log(static_cast<double>(p));
    v[static_cast<std::size_t>(p - 1)] = w;
    total += w;
  }
  const double scale = static_cast<double>(n) / total.value();
  for (double& x : v) x *= scale;
  return Majorant(DiscreteSignal(1, std::move(v)), n, "primes");
}

double correlation(const DiscreteSignal& nu, const std::vector<std::int64_t>& shifts) {
  if (nu.empty() || shifts.empty()) return 0.0;
  CompensatedSum acc;
  // n + shifts[0] must lie in the support window.
  const auto v = nu.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    const std::int64_t n = nu.lo() + static_cast<std::int64_t>(i) - shifts[0];
    double prod = v[i];
    for (std::size_t t = 1; t < shifts.size() && prod != 0.0; ++t) prod *= nu(n + shifts[t]);
    if (prod != 0.0) acc += prod;
  }
  return acc.value();
}

namespace {

/// C(n, k) as a double; overflows gracefully to inf.
double binomial(double n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= (n - k + i) / i;
  return r;
}

struct CorrResult {
  double max_value = 0.0;
  bool exhaustive = false;
  std::size_t tested = 0;
};

CorrResult max_correlation(const Majorant& nu, int l, std::size_t budget, std::mt19937_64& rng) {
  CorrResult res;
  const std::int64_t n = nu.N();
  const double nd = static_cast<double>(n);
  const auto support = nu.signal().support_points();
  if (static_cast<int>(support.size()) < l || n < l) {
    res.exhaustive = true;
    return res;
  }
  const double count = binomial(static_cast<double>(n - 1), l - 1);
  std::vector<std::int64_t> shifts(static_cast<std::size_t>(l), 0);
  if (count <= static_cast<double>(budget)) {
    res.exhaustive = true;
    // Tuples 0 = m_1 < m_2 < ... < m_l <= N - 1.
    for (int i = 1; i < l; ++i) shifts[static_cast<std::size_t>(i)] = i;
    for (;;) {
      res.max_value = std::max(res.max_value, correlation(nu.signal(), shifts) / nd);
      ++res.tested;
      int pos = l - 1;
      while (pos >= 1 && shifts[static_cast<std::size_t>(pos)] == n - 1 - (l - 1 - pos)) --pos;
      if (pos < 1) break;
      ++shifts[static_cast<std::size_t>(pos)];
      for (int j = pos + 1; j < l; ++j) shifts[static_cast<std::size_t>(j)] = shifts[static_cast<std::size_t>(j - 1)] + 1;
    }
    return res;
  }
  // Sample l distinct support points; the tuple of their offsets from the
  // smallest is a shift tuple with a nonzero term.
  for (std::size_t s = 0; s < budget; ++s) {
    std::vector<std::int64_t> pts;
    while (static_cast<int>(pts.size()) < l) {
      const auto k = static_cast<std::size_t>(to_unit(rng()) * static_cast<double>(support.size()));
      const std::int64_t p = support[std::min(k, support.size() - 1)];
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    for (int i = 0; i < l; ++i) shifts[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i)] - pts[0];
    res.max_value = std::max(res.max_value, correlation(nu.signal(), shifts) / nd);
    ++res.tested;
  }
  return res;
}

double restriction_value(const DiscreteSignal& phi, const FrequencyGrid& grid, double p) {
  const auto vals = fourier_grid(phi, grid);
  CompensatedSum acc;
  for (const auto& z : vals) acc += std::pow(std::abs(z), p);
  return acc.value() / static_cast<double>(grid.size());
}

}  // namespace

double restriction_estimate(const Majorant& nu, const FrequencyGrid& grid, double p,
                            std::size_t random_functions, std::uint64_t seed) {
  if (!(p >= 1.0)) throw ValidationError("restriction exponent must be >= 1");
  const double norm = static_cast<double>(nu.N()) / std::pow(nu.l1_mass(), p);
  double best = restriction_value(nu.signal(), grid, p) * norm;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < random_functions; ++s) {
    std::vector<double> v(nu.signal().values().begin(), nu.signal().values().end());
    for (double& x : v) {
      if (rng() & 1U) x = -x;
    }
    best = std::max(best, restriction_value(DiscreteSignal(nu.signal().lo(), std::move(v)), grid, p) * norm);
  }
  return best;
}

MajorantDiagnostics diagnose(const Majorant& nu, const FrequencyGrid& grid, const DiagnoseOptions& opts) {
  if (opts.k_max < 2) throw ValidationError("diagnose needs k_max >= 2");
  MajorantDiagnostics d;
  const double nd = static_cast<double>(nu.N());
  d.grid_m = grid.size();
  d.seed = opts.seed;
  d.shift_samples = opts.shift_samples;

  d.decay_sup = fourier_sup_diff(nu.signal(), DiscreteSignal::interval_indicator(nu.N()), grid);
  d.theta_decay = d.decay_sup.certified_upper / nd;
  const double l2 = lp_norm(nu.signal(), 2.0);
  d.theta_L2 = l2 * l2 / (nd * nd);
  d.theta_Linf = lp_norm(nu.signal(), kInfinity) / nd;

  std::mt19937_64 rng(opts.seed);
  for (int l = 2; l <= opts.k_max; ++l) {
    const auto r = max_correlation(nu, l, opts.shift_samples, rng);
    d.corr[l] = r.max_value;
    d.corr_exhaustive[l] = r.exhaustive;
    d.corr_tuples_tested[l] = r.tested;
  }
  for (double p : opts.p_list) {
    d.restriction_estimate[p] = restriction_estimate(nu, grid, p, opts.restriction_samples, opts.seed);
  }
  d.restriction_functions_tried = 1 + opts.restriction_samples;
  return d;
}

}  // namespace tlab
