#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the FFT, convolution or counting code paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "tlab/signal.hpp"

namespace oracle {

using cld = std::complex<long double>;

inline cld dft(const tlab::DiscreteSignal& f, long double alpha) {
  cld acc{0.0L, 0.0L};
  for (std::size_t i = 0; i < f.length(); ++i) {
    const long double n = static_cast<long double>(f.lo() + static_cast<std::int64_t>(i));
    const long double t = 2.0L * std::numbers::pi_v<long double> * alpha * n;
    acc += static_cast<long double>(f.values()[i]) * cld(std::cos(t), std::sin(t));
  }
  return acc;
}

inline std::vector<double> conv(const tlab::DiscreteSignal& f, const tlab::DiscreteSignal& g,
                                std::int64_t& lo_out) {
  lo_out = f.lo() + g.lo();
  std::vector<double> out(f.length() + g.length() - 1, 0.0);
  for (std::size_t i = 0; i < f.length(); ++i)
    for (std::size_t j = 0; j < g.length(); ++j) out[i + j] += f.values()[i] * g.values()[j];
  return out;
}

/// max over `points` equally spaced alpha of |f^ - g^|.
inline double dense_scan(const tlab::DiscreteSignal& f, const tlab::DiscreteSignal& g, std::size_t points) {
  long double best = 0.0L;
  for (std::size_t j = 0; j < points; ++j) {
    const long double a = static_cast<long double>(j) / static_cast<long double>(points);
    best = std::max(best, std::abs(dft(f, a) - dft(g, a)));
  }
  return static_cast<double>(best);
}

/// Sum over all x in the windows with sum c_i x_i = 0 of prod w_i(x_i),
/// enumerating every coordinate including the last.
inline double count_all(const std::vector<std::int64_t>& c, const std::vector<tlab::DiscreteSignal>& w) {
  const std::size_t s = c.size();
  std::vector<std::int64_t> x(s);
  long double total = 0.0L;
  std::function<void(std::size_t, std::int64_t, long double)> rec = [&](std::size_t i, std::int64_t lin,
                                                                         long double prod) {
    if (i == s) {
      if (lin == 0) total += prod;
      return;
    }
    for (std::int64_t n = w[i].lo(); n <= w[i].hi(); ++n) {
      const double v = w[i](n);
      if (v == 0.0) continue;
      rec(i + 1, lin + c[i] * n, prod * v);
    }
  };
  rec(0, 0, 1.0L);
  return static_cast<double>(total);
}

inline tlab::DiscreteSignal random_signal(std::mt19937_64& rng, std::int64_t lo, std::size_t len, double lo_v,
                                          double hi_v) {
  std::uniform_real_distribution<double> u(lo_v, hi_v);
  std::vector<double> v(len);
  for (auto& x : v) x = u(rng);
  return tlab::DiscreteSignal(lo, std::move(v));
}

}  // namespace oracle
