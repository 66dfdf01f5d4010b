#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "tlab/simplex.hpp"

using namespace tlab;

namespace {

struct SmallLp {
  std::vector<double> c;
  std::vector<double> u;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
};

// Solves the square system m x = r by Gaussian elimination; false if singular.
bool solve_square(std::vector<std::vector<double>> m, std::vector<double> r, std::vector<double>& x) {
  const std::size_t n = r.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
    if (std::abs(m[piv][col]) < 1e-12) return false;
    std::swap(m[piv], m[col]);
    std::swap(r[piv], r[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const double f = m[i][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
      r[i] -= f * r[col];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / m[i][i];
  return true;
}

// Best objective over all vertices: every choice of n active constraints.
double vertex_oracle(const SmallLp& lp) {
  const std::size_t n = lp.c.size();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < lp.a.size(); ++i) {
    rows.push_back(lp.a[i]);
    rhs.push_back(lp.b[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = -1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
    if (std::isfinite(lp.u[j])) {
      e[j] = 1.0;
      rows.push_back(e);
      rhs.push_back(lp.u[j]);
    }
  }
  double best = -INFINITY;
  const std::size_t m = rows.size();
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == n) {
      std::vector<std::vector<double>> sq;
      std::vector<double> r;
      for (auto i : pick) {
        sq.push_back(rows[i]);
        r.push_back(rhs[i]);
      }
      std::vector<double> x;
      if (!solve_square(sq, r, x)) return;
      for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += rows[i][j] * x[j];
        if (s > rhs[i] + 1e-9) return;
      }
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += lp.c[j] * x[j];
      best = std::max(best, obj);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

DenseLp build(const SmallLp& s) {
  DenseLp lp(s.c, s.u);
  for (std::size_t i = 0; i < s.a.size(); ++i) lp.add_row(s.a[i], s.b[i]);
  return lp;
}

}  // namespace

TEST_CASE("simplex: textbook maximum") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36.
  DenseLp lp({3.0, 5.0}, {DenseLp::kInf, DenseLp::kInf});
  lp.add_row(std::vector<double>{1.0, 0.0}, 4.0);
  lp.add_row(std::vector<double>{0.0, 2.0}, 12.0);
  lp.add_row(std::vector<double>{3.0, 2.0}, 18.0);
  REQUIRE(lp.solve() == LpStatus::Optimal);
  CHECK(lp.objective_value() == doctest::Approx(36.0));
  CHECK(lp.primal()[0] == doctest::Approx(2.0));
  CHECK(lp.primal()[1] == doctest::Approx(6.0));
  const auto y = lp.row_duals();
  CHECK(y[0] == doctest::Approx(0.0));
  CHECK(y[1] == doctest::Approx(1.5));
  CHECK(y[2] == doctest::Approx(1.0));
}

TEST_CASE("simplex: unbounded and bound flips") {
  DenseLp un({1.0, 1.0}, {DenseLp::kInf, DenseLp::kInf});
  un.add_row(std::vector<double>{1.0, -1.0}, 1.0);
  CHECK(un.solve() == LpStatus::Unbounded);

  DenseLp box({1.0, 2.0}, {1.0, 1.0});
  box.add_row(std::vector<double>{1.0, 1.0}, 5.0);
  REQUIRE(box.solve() == LpStatus::Optimal);
  CHECK(box.objective_value() == doctest::Approx(3.0));
}

TEST_CASE("simplex: dual simplex warm start after adding cuts") {
  DenseLp lp({1.0, 1.0}, {10.0, 10.0});
  REQUIRE(lp.solve() == LpStatus::Optimal);
  CHECK(lp.objective_value() == doctest::Approx(20.0));
  lp.add_row(std::vector<double>{1.0, 2.0}, 8.0);
  REQUIRE(lp.solve() == LpStatus::Optimal);
  CHECK(lp.objective_value() == doctest::Approx(8.0));
  lp.add_row(std::vector<double>{3.0, 1.0}, 9.0);
  REQUIRE(lp.solve() == LpStatus::Optimal);
  // Vertex of x + 2y = 8 and 3x + y = 9: (2, 3).
  CHECK(lp.objective_value() == doctest::Approx(5.0));
}

TEST_CASE("simplex: cold start with negative rhs needs dual feasibility") {
  // max -x - y with x + y >= 2 written as -x - y <= -2.
  DenseLp lp({-1.0, -1.0}, {DenseLp::kInf, DenseLp::kInf});
  lp.add_row(std::vector<double>{-1.0, -1.0}, -2.0);
  REQUIRE(lp.solve() == LpStatus::Optimal);
  CHECK(lp.objective_value() == doctest::Approx(-2.0));

  DenseLp inf({-1.0}, {1.0});
  inf.add_row(std::vector<double>{-1.0}, -2.0);
  CHECK(inf.solve() == LpStatus::Infeasible);
}

TEST_CASE("property: random small LPs match vertex enumeration and strong duality") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.2, 3.0);
  int solved = 0;
  for (int rep = 0; rep < 150; ++rep) {
    SmallLp s;
    const std::size_t n = 2 + static_cast<std::size_t>(rep % 3);
    const std::size_t m = 2 + static_cast<std::size_t>(rep % 4);
    for (std::size_t j = 0; j < n; ++j) {
      s.c.push_back(u(rng));
      s.u.push_back(rep % 2 == 0 ? pos(rng) : DenseLp::kInf);
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> row(n);
      for (auto& x : row) x = u(rng) + 0.3;
      s.a.push_back(row);
      s.b.push_back(pos(rng));
    }
    auto lp = build(s);
    const auto st = lp.solve();
    const double oracle = vertex_oracle(s);
    if (st == LpStatus::Unbounded) continue;
    REQUIRE(st == LpStatus::Optimal);
    ++solved;
    CHECK(lp.objective_value() == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
    // Dual bound: sum y b + sum u_j max(c_j - (A^T y)_j, 0) equals the optimum.
    const auto y = lp.row_duals();
    double dual = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < m; ++i) dual += y[i] * s.b[i];
    for (std::size_t j = 0; j < n; ++j) {
      double red = s.c[j];
      for (std::size_t i = 0; i < m; ++i) red -= s.a[i][j] * y[i];
      if (red > 1e-9) {
        if (!std::isfinite(s.u[j])) finite = false;
        else dual += s.u[j] * red;
      }
    }
    CHECK(finite);
    CHECK(dual == doctest::Approx(lp.objective_value()).epsilon(1e-8).scale(1.0));
    const auto x = lp.primal();
    for (std::size_t i = 0; i < m; ++i) {
      double sx = 0.0;
      for (std::size_t j = 0; j < n; ++j) sx += s.a[i][j] * x[j];
      CHECK(sx <= s.b[i] + 1e-9);
    }
  }
  CHECK(solved > 50);
}
