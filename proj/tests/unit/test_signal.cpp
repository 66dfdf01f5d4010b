#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "tlab/error.hpp"
#include "tlab/io.hpp"
#include "tlab/signal.hpp"

using namespace tlab;

namespace {

DiscreteSignal ones(std::int64_t lo, std::size_t len) { return DiscreteSignal(lo, std::vector<double>(len, 1.0)); }

}  // namespace

TEST_CASE("signal: construction rejects non-finite values") {
  CHECK_THROWS_AS(DiscreteSignal(0, {1.0, std::nan("")}), ValidationError);
  CHECK_THROWS_AS(DiscreteSignal(0, {kInfinity}), ValidationError);
  const DiscreteSignal e;
  CHECK(e.empty());
  CHECK(e.hi() == e.lo() - 1);
}

TEST_CASE("fourier_eval: point mass and cancellation") {
  const auto z = fourier_eval(DiscreteSignal::delta(3), 0.0);
  CHECK(z.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(z.imag()) < 1e-15);
  const auto c = fourier_eval(DiscreteSignal::interval_indicator(2), 0.5);
  CHECK(std::abs(c) < 1e-15);
  CHECK(std::abs(fourier_eval(DiscreteSignal{}, 0.3)) == 0.0);
}

TEST_CASE("fourier_eval: agrees with long double summation") {
  const auto f = DiscreteSignal::interval_indicator(10);
  const auto z = fourier_eval(f, 0.3);
  const auto o = oracle::dft(f, 0.3L);
  CHECK(std::abs(z.real() - static_cast<double>(o.real())) < 1e-12);
  CHECK(std::abs(z.imag() - static_cast<double>(o.imag())) < 1e-12);
}

TEST_CASE("convolve: hand examples") {
  const auto c = convolve(DiscreteSignal::interval_indicator(2), DiscreteSignal::interval_indicator(2));
  CHECK(c.lo() == 2);
  CHECK(c.hi() == 4);
  CHECK(c(2) == 1.0);
  CHECK(c(3) == 2.0);
  CHECK(c(4) == 1.0);
  const auto f = DiscreteSignal(-2, {0.5, -1.0, 3.0});
  CHECK(convolve(f, DiscreteSignal::delta(0)) == f);
  CHECK(convolve(DiscreteSignal::interval_indicator(3), DiscreteSignal::interval_indicator(3))(4) == 3.0);
}

TEST_CASE("convolve: FFT path matches brute force above the threshold") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const auto f = oracle::random_signal(rng, -300, 700 + 37 * rep, 0.0, 2.0);
    const auto g = oracle::random_signal(rng, 50, 900, -1.0, 1.0);
    const auto c = convolve(f, g);
    std::int64_t lo = 0;
    const auto ref = oracle::conv(f, g, lo);
    REQUIRE(c.lo() == lo);
    REQUIRE(c.length() == ref.size());
    double scale = 0.0;
    for (double v : ref) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(c.values()[i] - ref[i]) <= 1e-10 * scale);
  }
}

TEST_CASE("convolve: output cap raises ResourceError") {
  ConvolutionLimits lim;
  lim.max_output_length = 100;
  CHECK_THROWS_AS(convolve(ones(0, 80), ones(0, 80), lim), ResourceError);
}

TEST_CASE("lp_norm: examples") {
  const auto one = DiscreteSignal::interval_indicator(25);
  CHECK(lp_norm(one, 1.0) == doctest::Approx(25.0));
  CHECK(lp_norm(one, 2.0) == doctest::Approx(5.0));
  CHECK(lp_norm(DiscreteSignal(1, {3.0, -4.0}), kInfinity) == 4.0);
  CHECK_THROWS_AS(lp_norm(one, 0.5), ValidationError);
}

TEST_CASE("fourier_sup_diff: trivial cases") {
  const auto f = DiscreteSignal::interval_indicator(30);
  const FrequencyGrid grid(4096);
  const auto same = fourier_sup_diff(f, f, grid);
  CHECK(same.certified_lower == 0.0);
  CHECK(same.certified_upper == 0.0);
  const auto vs0 = fourier_sup_diff(f, DiscreteSignal{}, grid);
  CHECK(vs0.certified_lower >= 30.0 - 1e-9);
  CHECK(vs0.certified_upper >= vs0.certified_lower);
  CHECK(vs0.lipschitz_slack >= 0.0);
}

TEST_CASE("fourier_sup_diff: brackets a dense scan") {
  const auto f = DiscreteSignal::interval_indicator(20);
  const auto g = f.shifted(1);
  const auto s = fourier_sup_diff(f, g, FrequencyGrid(4096));
  const double scan = oracle::dense_scan(f, g, 1000000);
  CHECK(s.certified_lower <= scan + 1e-9);
  CHECK(scan <= s.certified_upper + 1e-9);
}

TEST_CASE("property: sup brackets on random pairs") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 6; ++rep) {
    const auto f = oracle::random_signal(rng, 1, 15, 0.0, 1.0);
    const auto g = oracle::random_signal(rng, -3, 12, 0.0, 1.0);
    const auto s = fourier_sup_diff(f, g, FrequencyGrid(64));
    const double scan = oracle::dense_scan(f, g, 100000);
    CHECK(s.certified_lower <= scan + 1e-9);
    CHECK(scan <= s.certified_upper + 1e-9);
  }
}

TEST_CASE("property: Parseval on the grid") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto f = oracle::random_signal(rng, -40 + rep, 60 + 3 * rep, -1.0, 1.0);
    const FrequencyGrid grid(256);
    const auto hat = fourier_grid(f, grid);
    long double acc = 0.0L;
    for (const auto& z : hat) acc += std::norm(z);
    const double lhs = static_cast<double>(acc / 256.0L);
    const double rhs = std::pow(lp_norm(f, 2.0), 2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("property: fourier_grid agrees with pointwise evaluation") {
  std::mt19937_64 rng(8);
  const auto f = oracle::random_signal(rng, -17, 90, -2.0, 2.0);
  const FrequencyGrid grid(50);
  const auto hat = fourier_grid(f, grid);
  for (std::int64_t j = 0; j < 50; ++j) {
    const auto o = oracle::dft(f, static_cast<long double>(j) / 50.0L);
    CHECK(std::abs(hat[static_cast<std::size_t>(j)] - std::complex<double>(o)) < 1e-10);
  }
}

TEST_CASE("property: convolution theorem") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto f = oracle::random_signal(rng, -10, 1 + rep % 40, 0.0, 1.0);
    const auto g = oracle::random_signal(rng, 3, 1 + (7 * rep) % 50, 0.0, 1.0);
    const double a = ua(rng);
    const auto lhs = fourier_eval(convolve(f, g), a);
    const auto rhs = fourier_eval(f, a) * fourier_eval(g, a);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("property: |f^| <= ||f||_1 with equality at 0 for f >= 0") {
  std::mt19937_64 rng(10);
  for (int rep = 0; rep < 10; ++rep) {
    const auto f = oracle::random_signal(rng, 0, 40, 0.0, 1.0);
    const auto s = fourier_sup(f, FrequencyGrid(512));
    CHECK(s.certified_lower <= lp_norm(f, 1.0) * (1 + 1e-12));
    CHECK(std::abs(fourier_eval(f, 0.0)) == doctest::Approx(lp_norm(f, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("signal helpers: dilation, reflection, restriction") {
  const auto f = DiscreteSignal(1, {1.0, 2.0, 3.0});
  const auto d = f.dilated(-2);
  CHECK(d(-2) == 1.0);
  CHECK(d(-4) == 2.0);
  CHECK(d(-3) == 0.0);
  CHECK(f.reflected()(-3) == 3.0);
  CHECK(f.restricted(2, 2) == DiscreteSignal(2, {2.0}));
  CHECK(DiscreteSignal(-1, {0.0, 0.0, 5.0, 0.0}).trimmed() == DiscreteSignal::delta(1, 5.0));
  CHECK(f.support_points() == std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("io: signal CSV round trip is exact") {
  std::mt19937_64 rng(12);
  const auto f = oracle::random_signal(rng, -5, 30, 0.001, 1.0);
  std::stringstream ss;
  io::write_signal_csv(ss, f);
  const auto g = io::read_signal_csv(ss);
  CHECK(g == f);
  std::stringstream bad("n,value\n1,2\n1,3\n");
  CHECK_THROWS_AS(io::read_signal_csv(bad), ValidationError);
  std::stringstream shuffled("n,value\n4,1.5\n2,0.5\n");
  const auto h = io::read_signal_csv(shuffled);
  CHECK(h.lo() == 2);
  CHECK(h(3) == 0.0);
  CHECK(h(4) == 1.5);
}
