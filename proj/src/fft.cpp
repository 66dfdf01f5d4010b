#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace tlab::detail {
namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> alloc(std::size_t n) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1))));
}

struct Plan {
  fftw_plan p = nullptr;
  ~Plan() {
    if (p != nullptr) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(p);
    }
  }
};

std::size_t good_size(std::size_t n) {
  // Smallest 2^a 3^b 5^c >= n.
  std::size_t best = std::size_t{1} << 62;
  for (std::size_t p2 = 1; p2 < 2 * n + 2; p2 *= 2) {
    for (std::size_t p3 = p2; p3 < 2 * n + 2; p3 *= 3) {
      for (std::size_t p5 = p3; p5 < 2 * n + 2; p5 *= 5) {
        if (p5 >= n) best = std::min(best, p5);
      }
    }
  }
  return best;
}

}  // namespace

std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = good_size(out_len);
  const std::size_t nc = n / 2 + 1;

  auto ra = alloc<double>(n);
  auto rb = alloc<double>(n);
  auto ca = alloc<fftw_complex>(nc);
  auto cb = alloc<fftw_complex>(nc);
  std::fill_n(ra.get(), n, 0.0);
  std::fill_n(rb.get(), n, 0.0);
  std::copy(a.begin(), a.end(), ra.get());
  std::copy(b.begin(), b.end(), rb.get());

  Plan fa, fb, inv;
  {
    std::lock_guard lock(planner_mutex());
    const int ni = static_cast<int>(n);
    fa.p = fftw_plan_dft_r2c_1d(ni, ra.get(), ca.get(), FFTW_ESTIMATE);
    fb.p = fftw_plan_dft_r2c_1d(ni, rb.get(), cb.get(), FFTW_ESTIMATE);
    inv.p = fftw_plan_dft_c2r_1d(ni, ca.get(), ra.get(), FFTW_ESTIMATE);
  }
  fftw_execute(fa.p);
  fftw_execute(fb.p);
  for (std::size_t k = 0; k < nc; ++k) {
    const double re = ca[k][0] * cb[k][0] - ca[k][1] * cb[k][1];
    const double im = ca[k][0] * cb[k][1] + ca[k][1] * cb[k][0];
    ca[k][0] = re;
    ca[k][1] = im;
  }
  fftw_execute(inv.p);

  std::vector<double> out(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = ra[i] * scale;
  return out;
}

std::vector<cplx> dft_positive(std::span<const double> x) {
  const std::size_t m = x.size();
  if (m == 0) return {};
  const std::size_t nc = m / 2 + 1;
  auto rx = alloc<double>(m);
  auto cx = alloc<fftw_complex>(nc);
  std::copy(x.begin(), x.end(), rx.get());
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.p = fftw_plan_dft_r2c_1d(static_cast<int>(m), rx.get(), cx.get(), FFTW_ESTIMATE);
  }
  fftw_execute(plan.p);
  // FFTW computes sum x e(-jr/M); for real x the + sign is its conjugate.
  std::vector<cplx> out(m);
  for (std::size_t j = 0; j < nc; ++j) out[j] = cplx(cx[j][0], -cx[j][1]);
  for (std::size_t j = nc; j < m; ++j) out[j] = std::conj(out[m - j]);
  return out;
}

}  // namespace tlab::detail
