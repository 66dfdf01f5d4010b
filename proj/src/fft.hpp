#pragma once

#include <span>
#include <vector>

#include "tlab/numeric.hpp"

namespace tlab::detail {

/// Linear convolution of two real sequences by zero-padded FFT.
std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b);

/// out[j] = sum_r x[r] e(j r / M) for j < M, M = x.size().
std::vector<cplx> dft_positive(std::span<const double> x);

}  // namespace tlab::detail
