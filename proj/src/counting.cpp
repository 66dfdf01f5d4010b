#include "tlab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <numeric>
#include <sstream>

#include "tlab/error.hpp"

namespace tlab {

LinearForm::LinearForm(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 3) throw ValidationError("linear form needs s >= 3 coefficients");
  for (auto c : coeffs_) {
    if (c == 0) throw ValidationError("linear form coefficients must be nonzero");
  }
  if (std::accumulate(coeffs_.begin(), coeffs_.end(), std::int64_t{0}) != 0) {
    throw ValidationError("linear form coefficients must sum to zero");
  }
}

std::int64_t LinearForm::abs_sum() const {
  std::int64_t s = 0;
  for (auto c : coeffs_) s += std::abs(c);
  return s;
}

LinearForm LinearForm::negated() const {
  auto c = coeffs_;
  for (auto& x : c) x = -x;
  return LinearForm(std::move(c));
}

LinearForm parse_form(const std::string& text) {
  std::vector<std::int64_t> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      c.push_back(std::stoll(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw ValidationError("");
    } catch (const std::exception&) {
      throw ValidationError("cannot parse form coefficient '" + item + "'");
    }
  }
  return LinearForm(std::move(c));
}

namespace {

void check_arity(const LinearForm& form, const std::vector<DiscreteSignal>& w) {
  if (w.size() != form.s()) {
    throw ValidationError("form has " + std::to_string(form.s()) + " coefficients but " +
                          std::to_string(w.size()) + " weights were given");
  }
}

double diagonal(const std::vector<DiscreteSignal>& w) {
  std::int64_t lo = std::numeric_limits<std::int64_t>::min();
  std::int64_t hi = std::numeric_limits<std::int64_t>::max();
  for (const auto& x : w) {
    if (x.empty()) return 0.0;
    lo = std::max(lo, x.lo());
    hi = std::min(hi, x.hi());
  }
  CompensatedSum acc;
  for (std::int64_t n = lo; n <= hi; ++n) {
    double p = 1.0;
    for (const auto& x : w) p *= x(n);
    acc += p;
  }
  return acc.value();
}

}  // namespace

std::int64_t wrap_modulus(const LinearForm& form, const std::vector<DiscreteSignal>& weights) {
  std::int64_t h = 0;
  for (const auto& w : weights) h = std::max(h, w.max_abs_index());
  const std::int64_t need = form.abs_sum() * h + 1;
  std::int64_t m = 1;
  while (m <= need) m <<= 1;
  return m;
}

CountReport count_weighted(const LinearForm& form, const std::vector<DiscreteSignal>& weights,
                           const ConvolutionLimits& limits) {
  check_arity(form, weights);
  CountReport r;
  r.method = "convolution";
  r.wrap_modulus = wrap_modulus(form, weights);
  if (static_cast<double>(r.wrap_modulus) > static_cast<double>(limits.max_output_length)) {
    throw ResourceError("counting modulus " + std::to_string(r.wrap_modulus) + " exceeds cap");
  }
  r.diagonal = diagonal(weights);
  for (const auto& w : weights) {
    if (w.trimmed().empty()) return r;
  }
  const std::size_t s = form.s();
  DiscreteSignal acc = weights[0].trimmed().dilated(form.coeffs()[0]);
  for (std::size_t i = 1; i + 1 < s; ++i) {
    acc = convolve(acc, weights[i].trimmed().dilated(form.coeffs()[i]), limits);
  }
  // (acc * F_s)(0) = sum_x acc(x) F_s(-x).
  const auto last = weights[s - 1].trimmed().dilated(form.coeffs()[s - 1]);
  CompensatedSum total;
  for (std::size_t i = 0; i < last.length(); ++i) {
    const double v = last.values()[i];
    if (v == 0.0) continue;
    total += v * acc(-(last.lo() + static_cast<std::int64_t>(i)));
  }
  r.total = total.value();
  return r;
}

CountReport count_weighted(const LinearForm& form, const DiscreteSignal& weight, const ConvolutionLimits& limits) {
  return count_weighted(form, std::vector<DiscreteSignal>(form.s(), weight), limits);
}

CountReport count_brute(const LinearForm& form, const std::vector<DiscreteSignal>& weights, double max_terms) {
  check_arity(form, weights);
  CountReport r;
  r.method = "brute";
  r.wrap_modulus = wrap_modulus(form, weights);
  r.diagonal = diagonal(weights);
  const std::size_t s = form.s();
  std::vector<std::vector<std::int64_t>> pts(s);
  double work = 1.0;
  for (std::size_t i = 0; i < s; ++i) {
    pts[i] = weights[i].support_points();
    work *= static_cast<double>(pts[i].size());
  }
  if (work > max_terms) throw ResourceError("brute-force count needs " + std::to_string(work) + " tuples");
  if (work == 0.0) return r;
  // Enumerate the first s-1 coordinates; the last is forced.
  const auto& c = form.coeffs();
  const auto& last = weights[s - 1];
  CompensatedSum total;
  std::vector<std::size_t> idx(s - 1, 0);
  for (;;) {
    std::int64_t lin = 0;
    double prod = 1.0;
    for (std::size_t i = 0; i + 1 < s; ++i) {
      const std::int64_t x = pts[i][idx[i]];
      lin += c[i] * x;
      prod *= weights[i](x);
    }
    if (lin % c[s - 1] == 0) total += prod * last(-lin / c[s - 1]);
    std::size_t pos = 0;
    while (pos + 1 < s && ++idx[pos] == pts[pos].size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos + 1 == s) break;
  }
  r.total = total.value();
  return r;
}

double count_fourier(const LinearForm& form, const std::vector<DiscreteSignal>& weights) {
  check_arity(form, weights);
  const std::int64_t m = wrap_modulus(form, weights);
  const FrequencyGrid grid(m);
  std::vector<std::vector<cplx>> hats;
  hats.reserve(weights.size());
  for (const auto& w : weights) hats.push_back(fourier_grid(w, grid));
  CompensatedSum acc;
  const auto& c = form.coeffs();
  for (std::int64_t j = 0; j < m; ++j) {
    cplx p{1.0, 0.0};
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::int64_t idx = (c[i] * j) % m;
      if (idx < 0) idx += m;
      p *= hats[i][static_cast<std::size_t>(idx)];
    }
    acc += p.real();
  }
  return acc.value() / static_cast<double>(m);
}

std::optional<std::int64_t> count_exact_integer(const LinearForm& form, const std::vector<DiscreteSignal>& weights,
                                                double max_pairs) {
  check_arity(form, weights);
  const std::size_t s = form.s();
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> pts(s);
  for (std::size_t i = 0; i < s; ++i) {
    const auto& w = weights[i];
    for (std::size_t t = 0; t < w.length(); ++t) {
      const double v = w.values()[t];
      if (v == 0.0) continue;
      if (v != std::nearbyint(v) || std::abs(v) > 1048576.0) return std::nullopt;
      pts[i].push_back({w.lo() + static_cast<std::int64_t>(t), static_cast<std::int64_t>(v)});
    }
  }
  double work = 1.0;
  for (std::size_t i = 0; i + 1 < s; ++i) work *= static_cast<double>(pts[i].size());
  if (work > max_pairs) return std::nullopt;
  const auto& c = form.coeffs();
  const auto& last = weights[s - 1];
  if (work == 0.0) return 0;
  std::int64_t total = 0;
  std::vector<std::size_t> idx(s - 1, 0);
  for (;;) {
    std::int64_t lin = 0;
    std::int64_t prod = 1;
    for (std::size_t i = 0; i + 1 < s; ++i) {
      lin += c[i] * pts[i][idx[i]].first;
      prod *= pts[i][idx[i]].second;
    }
    if (lin % c[s - 1] == 0) total += prod * static_cast<std::int64_t>(last(-lin / c[s - 1]));
    std::size_t pos = 0;
    while (pos + 1 < s && ++idx[pos] == pts[pos].size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos + 1 == s) break;
  }
  return total;
}

TransferCheck transfer_error_bound(const LinearForm& form, const DiscreteSignal& f, const DiscreteSignal& g,
                                   const FrequencyGrid& grid) {
  TransferCheck t;
  const auto s = static_cast<int>(form.s());
  t.sup_err = fourier_sup_diff(f, g, grid).certified_upper;
  const double l1 = std::max(lp_norm(f, 1.0), lp_norm(g, 1.0));
  const double l2 = std::max(lp_norm(f, 2.0), lp_norm(g, 2.0));
  t.delta = t.sup_err * s * std::pow(l1, s - 3) * l2 * l2;
  t.count_f = count_weighted(form, f).total;
  t.count_g = count_weighted(form, g).total;
  t.gap = std::abs(t.count_f - t.count_g);
  const double slack = 1e-6 * std::max({1.0, std::abs(t.count_f), std::abs(t.count_g)});
  t.holds = t.gap <= t.delta + slack;
  return t;
}

DiscreteSignal ThresholdResult::indicator() const { return DiscreteSignal::indicator(elements); }

ThresholdResult threshold_extract(const DiscreteSignal& g, double delta, int k, std::int64_t n) {
  if (!(delta > 0.0)) throw ValidationError("threshold needs delta > 0");
  if (k < 2) throw ValidationError("threshold needs k >= 2");
  if (n < 1) throw ValidationError("threshold needs N >= 1");
  ThresholdResult r;
  r.delta = delta;
  r.k = k;
  r.N = n;
  const double nd = static_cast<double>(n);
  CompensatedSum mass;
  CompensatedSum powk;
  for (std::size_t i = 0; i < g.length(); ++i) {
    const double v = g.values()[i];
    if (v < 0.0) throw ValidationError("threshold needs g >= 0");
    mass += v;
    powk += std::pow(v, k);
    if (v >= 0.5 * delta) r.elements.push_back(g.lo() + static_cast<std::int64_t>(i));
  }
  r.c_k = powk.value() / nd;
  r.window_length = static_cast<std::int64_t>(g.trimmed().length());
  r.density_ok = mass.value() >= delta * nd * (1.0 - 1e-12);
  const double kk = static_cast<double>(k);
  if (r.c_k > 0.0) {
    r.bound_interval = std::pow(0.5 * delta, kk / (kk - 1.0)) * std::pow(r.c_k, -1.0 / (kk - 1.0)) * nd;
    // sum over B of g >= sum g - (delta/2) * window; Hölder on B.
    const double on_b = mass.value() - 0.5 * delta * static_cast<double>(r.window_length);
    if (on_b > 0.0) {
      r.bound_window = std::pow(on_b, kk / (kk - 1.0)) * std::pow(r.c_k * nd, -1.0 / (kk - 1.0));
    }
  }
  const double size = static_cast<double>(r.elements.size());
  r.holds_interval = size >= r.bound_interval * (1.0 - 1e-12);
  r.holds_window = size >= r.bound_window * (1.0 - 1e-12);
  return r;
}

ComparisonResult count_comparison(const LinearForm& form, const DiscreteSignal& f, const DiscreteSignal& g,
                                  const ThresholdResult& b) {
  ComparisonResult c;
  c.factor = std::pow(0.5 * b.delta, static_cast<double>(form.s()));
  c.count_f = count_weighted(form, f).total;
  c.count_g = count_weighted(form, g).total;
  c.count_b = count_weighted(form, b.indicator()).total;
  c.holds = c.count_g >= c.factor * c.count_b - 1e-9 * std::max(1.0, c.count_g);
  return c;
}

double bloom_constant(double delta, int s, double eps_param, double c_abs) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ValidationError("bloom_constant needs 0 < delta <= 1");
  if (s < 3) throw ValidationError("bloom_constant needs s >= 3");
  if (!(eps_param > 0.0 && eps_param < s - 2)) throw ValidationError("bloom_constant needs 0 < eps < s - 2");
  if (!(c_abs >= 0.0)) throw ValidationError("bloom_constant needs C >= 0");
  return std::exp(-c_abs / std::pow(delta, 1.0 / (s - 2 - eps_param)));
}

}  // namespace tlab
