#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tlab/error.hpp"
#include "tlab/majorants.hpp"

using namespace tlab;

namespace {

MajorantDiagnostics quick_diag(const Majorant& nu, int k_max = 3, std::size_t samples = 100000) {
  DiagnoseOptions o;
  o.k_max = k_max;
  o.shift_samples = samples;
  o.restriction_samples = 2;
  return diagnose(nu, FrequencyGrid::default_for(static_cast<std::size_t>(nu.N())), o);
}

}  // namespace

TEST_CASE("majorant: invariants are enforced") {
  CHECK_THROWS_AS(Majorant(DiscreteSignal(1, {1.0, -1.0, 2.0}), 3), ValidationError);
  CHECK_THROWS_AS(Majorant(DiscreteSignal(0, {1.0, 1.0, 1.0}), 3), ValidationError);
  CHECK_THROWS_AS(Majorant(DiscreteSignal(1, {0.1, 0.1, 0.1, 0.1}), 4), ValidationError);
  CHECK_THROWS_AS(Majorant(DiscreteSignal(1, {9.0}), 4), ValidationError);
  CHECK_NOTHROW(Majorant(DiscreteSignal(1, {1.0, 1.0, 1.0, 1.0}), 4));
}

TEST_CASE("make_uniform: examples") {
  const auto nu = make_uniform(10);
  CHECK(nu.l1_mass() == 10.0);
  const auto d = quick_diag(nu);
  CHECK(d.theta_decay == 0.0);
  CHECK(d.theta_Linf == doctest::Approx(0.1));
  CHECK(d.corr.at(2) == doctest::Approx(0.9));
  CHECK(d.corr.at(2) < 1.0);
}

TEST_CASE("make_random_sparse: mass, determinism and theta_Linf") {
  for (double e : {0.5, 2.0 / 3.0, 0.75}) {
    const auto nu = make_random_sparse(3000, e, 4);
    CHECK(nu.l1_mass() == doctest::Approx(3000.0).epsilon(1e-12));
    CHECK(nu.signal() == make_random_sparse(3000, e, 4).signal());
  }
  const auto full = make_random_sparse(500, 1.0, 9);
  CHECK(full.signal().support_points().size() == 500);

  const auto nu = make_random_sparse(10000, 2.0 / 3.0, 1);
  const auto s = nu.signal().support_points();
  double mx = 0.0;
  for (auto n : s) mx = std::max(mx, nu.signal()(n));
  const auto d = quick_diag(nu, 2);
  CHECK(d.theta_Linf == doctest::Approx(mx / 10000.0).epsilon(1e-12));
  CHECK(d.theta_Linf == doctest::Approx(1.0 / static_cast<double>(s.size())).epsilon(1e-12));
}

TEST_CASE("make_random_sparse: empty first draw is resampled and flagged") {
  // Inclusion probability 10^-0.99 ~ 0.1 on 10 points: some seed draws empty.
  bool saw = false;
  for (std::uint64_t seed = 0; seed < 200 && !saw; ++seed) {
    const auto nu = make_random_sparse(10, 0.01, seed);
    CHECK(nu.l1_mass() == doctest::Approx(10.0));
    if (nu.resampled()) {
      saw = true;
      CHECK(nu.seed_used() != seed);
    }
  }
  CHECK(saw);
}

TEST_CASE("make_squares: examples") {
  const auto nu = make_squares(9);
  CHECK(nu.signal().support_points() == std::vector<std::int64_t>{1, 4, 9});
  CHECK(nu.signal()(1) == 2.0);
  CHECK(nu.signal()(4) == 4.0);
  CHECK(nu.signal()(9) == 6.0);
  CHECK(nu.signal()(2) == 0.0);
  CHECK(nu.l1_mass() == 12.0);
  CHECK(make_squares(100).l1_mass() == 110.0);
}

TEST_CASE("make_weighted_primes: examples") {
  const auto nu = make_weighted_primes(10);
  CHECK(nu.signal().support_points() == std::vector<std::int64_t>{2, 3, 5, 7});
  for (std::int64_t n : {50, 100, 1000}) CHECK(make_weighted_primes(n).l1_mass() == doctest::Approx(double(n)));
  const auto p = make_weighted_primes(100);
  CHECK(p.signal()(97) / p.signal()(2) == doctest::Approx(std::log(97.0) / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("diagnose: corr[2] equals a brute-force double loop") {
  const auto nu = make_random_sparse(10000, 2.0 / 3.0, 1);
  const auto d = quick_diag(nu, 2);
  REQUIRE(d.corr_exhaustive.at(2));
  const auto s = nu.signal().support_points();
  double best = 0.0;
  for (std::int64_t m = 1; m < 10000; ++m) {
    long double acc = 0.0L;
    for (auto n : s) acc += static_cast<long double>(nu.signal()(n)) * nu.signal()(n + m);
    best = std::max(best, static_cast<double>(acc));
  }
  CHECK(d.corr.at(2) == doctest::Approx(best / 10000.0).epsilon(1e-12));
}

TEST_CASE("diagnose: correlation of explicit tuples") {
  const auto nu = make_uniform(20).signal();
  CHECK(correlation(nu, {0, 3}) == 17.0);
  CHECK(correlation(nu, {0, 3, 5}) == 15.0);
  CHECK(correlation(nu, {2, -2}) == 16.0);
}

TEST_CASE("property: every majorant has |nu^(0)| = ||nu||_1 on the grid") {
  for (const auto& nu : {make_uniform(300), make_random_sparse(1500, 0.7, 2), make_squares(900),
                         make_weighted_primes(700)}) {
    const auto s = fourier_sup(nu.signal(), FrequencyGrid::default_for(static_cast<std::size_t>(nu.N())));
    CHECK(s.certified_lower == doctest::Approx(nu.l1_mass()).epsilon(1e-12));
    CHECK(s.argmax == 0);
  }
}

TEST_CASE("property: theta_L2 floor and theta_L2 <= 2 theta_Linf") {
  for (const auto& nu : {make_uniform(200), make_random_sparse(2000, 2.0 / 3.0, 3), make_squares(400),
                         make_weighted_primes(500)}) {
    const auto d = quick_diag(nu, 2, 5000);
    const double nd = static_cast<double>(nu.N());
    CHECK(d.theta_L2 >= std::pow(nu.l1_mass() / nd, 2) / nd * (1 - 1e-12));
    CHECK(d.theta_L2 <= 2.0 * d.theta_Linf);
    CHECK(d.theta_decay >= 0.0);
    for (const auto& [l, v] : d.corr) CHECK(v >= 0.0);
  }
}

TEST_CASE("property: mass at 0 is invariant under permuting support values") {
  const auto nu = make_weighted_primes(300);
  auto v = std::vector<double>(nu.signal().values().begin(), nu.signal().values().end());
  std::vector<double> nz;
  for (double x : v)
    if (x != 0.0) nz.push_back(x);
  std::reverse(nz.begin(), nz.end());
  std::size_t t = 0;
  for (double& x : v)
    if (x != 0.0) x = nz[t++];
  const Majorant perm(DiscreteSignal(nu.signal().lo(), v), nu.N());
  CHECK(std::abs(fourier_eval(perm.signal(), 0.0)) == doctest::Approx(std::abs(fourier_eval(nu.signal(), 0.0))));
}

TEST_CASE("property: restriction estimate is monotone in the number of test functions") {
  const auto nu = make_random_sparse(800, 2.0 / 3.0, 5);
  const FrequencyGrid grid(8192);
  double prev = 0.0;
  for (std::size_t r : {0, 1, 2, 4, 8}) {
    const double v = restriction_estimate(nu, grid, 4.0, r, 17);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("diagnose: sampled correlations are flagged, provenance recorded") {
  const auto nu = make_random_sparse(2000, 2.0 / 3.0, 1);
  DiagnoseOptions o;
  o.k_max = 3;
  o.shift_samples = 500;
  o.seed = 42;
  const auto d = diagnose(nu, FrequencyGrid(4096), o);
  CHECK_FALSE(d.corr_exhaustive.at(2));
  CHECK_FALSE(d.corr_exhaustive.at(3));
  CHECK(d.grid_m == 4096);
  CHECK(d.seed == 42);
  CHECK(d.shift_samples == 500);
  CHECK_THROWS_AS(diagnose(nu, FrequencyGrid(64), DiagnoseOptions{1}), ValidationError);
}
