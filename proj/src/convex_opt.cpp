#include "tlab/convex_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "tlab/error.hpp"
#include "tlab/simplex.hpp"

namespace tlab {

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

PointHull::PointHull(std::vector<Point> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw ValidationError("point hull needs at least one generator");
  dim_ = gens_.front().size();
  if (dim_ == 0) throw ValidationError("point hull needs dimension >= 1");
  for (const auto& g : gens_) {
    if (g.size() != dim_) throw ValidationError("point hull generators have inconsistent dimension");
    for (double v : g) {
      if (!std::isfinite(v)) throw ValidationError("point hull generator is not finite");
    }
  }
}

Point PointHull::combine(const std::vector<double>& weights) const {
  Point y(dim_, 0.0);
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (weights[i] == 0.0) continue;
    for (std::size_t k = 0; k < dim_; ++k) y[k] += weights[i] * gens_[i][k];
  }
  return y;
}

ProjectionResult project_onto_hull(const Point& x, const PointHull& a, double tol, std::size_t max_iterations) {
  if (x.size() != a.dimension()) throw ValidationError("projection point has wrong dimension");
  if (!(tol > 0.0)) throw ValidationError("projection tolerance must be positive");
  const std::size_t m = a.size();
  const std::size_t dim = a.dimension();
  ProjectionResult res;

  // Start at the generator nearest to x.
  std::vector<double> w(m, 0.0);
  {
    std::size_t best = 0;
    double bd = kInfinity;
    for (std::size_t i = 0; i < m; ++i) {
      double d = 0.0;
      for (std::size_t k = 0; k < dim; ++k) d += (a[i][k] - x[k]) * (a[i][k] - x[k]);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    w[best] = 1.0;
  }
  Point y = a.combine(w);
  const double scale = 1.0 + dot(x, x);
  // The gap bounds |y - y*|^2 / 2, so the loop runs well past tol itself.
  const double stop = std::max(tol * 1e-5, 1e-15) * scale;

  Point grad(dim);
  Point dir(dim);
  for (res.iterations = 0; res.iterations < max_iterations; ++res.iterations) {
    for (std::size_t k = 0; k < dim; ++k) grad[k] = y[k] - x[k];
    const double gy = dot(grad, y);
    std::size_t s = 0;
    std::size_t v = m;
    double gs = kInfinity;
    double gv = -kInfinity;
    for (std::size_t i = 0; i < m; ++i) {
      const double gi = dot(grad, a[i]);
      if (gi < gs) {
        gs = gi;
        s = i;
      }
      if (w[i] > 0.0 && gi > gv) {
        gv = gi;
        v = i;
      }
    }
    const double fw_gap = gy - gs;
    res.gap = fw_gap;
    if (fw_gap <= stop) {
      res.converged = true;
      break;
    }
    const double away_gap = gv - gy;
    double gamma_max = 1.0;
    bool away = false;
    if (v < m && away_gap > fw_gap && w[v] < 1.0) {
      away = true;
      for (std::size_t k = 0; k < dim; ++k) dir[k] = y[k] - a[v][k];
      gamma_max = w[v] / (1.0 - w[v]);
    } else {
      for (std::size_t k = 0; k < dim; ++k) dir[k] = a[s][k] - y[k];
    }
    const double dd = dot(dir, dir);
    if (dd <= 0.0) {
      res.converged = true;
      break;
    }
    const double gamma = std::clamp(-dot(grad, dir) / dd, 0.0, gamma_max);
    if (gamma == 0.0) {
      res.converged = fw_gap <= stop;
      break;
    }
    if (away) {
      for (double& wi : w) wi *= (1.0 + gamma);
      w[v] -= gamma;
      if (gamma >= gamma_max) w[v] = 0.0;
    } else {
      for (double& wi : w) wi *= (1.0 - gamma);
      w[s] += gamma;
    }
    for (std::size_t k = 0; k < dim; ++k) y[k] += gamma * dir[k];
  }
  // Renormalize the weights and rebuild y from them.
  double ws = 0.0;
  for (double& wi : w) {
    wi = std::max(wi, 0.0);
    ws += wi;
  }
  for (double& wi : w) wi /= ws;
  y = a.combine(w);

  res.y0 = y;
  res.weights = w;
  Point phi(dim);
  for (std::size_t k = 0; k < dim; ++k) phi[k] = x[k] - y[k];
  res.distance = std::sqrt(dot(phi, phi));
  res.obtuse_max = -kInfinity;
  for (std::size_t i = 0; i < m; ++i) {
    double t = 0.0;
    for (std::size_t k = 0; k < dim; ++k) t += phi[k] * (a[i][k] - y[k]);
    res.obtuse_max = std::max(res.obtuse_max, t);
  }
  res.inside = res.distance <= tol;
  if (!res.inside) {
    HyperplaneWitness h;
    h.normal = phi;
    h.anchor_value = dot(x, phi);
    h.projection = y;
    h.distance = res.distance;
    h.max_violation = -kInfinity;
    for (std::size_t i = 0; i < m; ++i) h.max_violation = std::max(h.max_violation, dot(a[i], phi) - h.anchor_value);
    res.witness = h;
  }
  return res;
}

SaddleResult solve_matrix_game(const std::vector<std::vector<double>>& payoff) {
  if (payoff.empty() || payoff.front().empty()) throw ValidationError("matrix game needs a nonempty payoff");
  const std::size_t rows = payoff.size();
  const std::size_t cols = payoff.front().size();
  double lo = kInfinity;
  for (const auto& r : payoff) {
    if (r.size() != cols) throw ValidationError("ragged payoff matrix");
    for (double v : r) lo = std::min(lo, v);
  }
  const double shift = 1.0 - lo;  // G + shift >= 1

  // Column player: max sum w s.t. (G + shift) w <= 1, w >= 0; value' = 1 / sum w.
  DenseLp lp(std::vector<double>(cols, 1.0), std::vector<double>(cols, DenseLp::kInf));
  std::vector<double> row(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) row[j] = payoff[i][j] + shift;
    lp.add_row(row, 1.0);
  }
  const auto st = lp.solve();
  if (st != LpStatus::Optimal) throw Error(std::string("matrix game LP ended ") + to_string(st));
  auto w = lp.primal();
  auto y = lp.row_duals();
  double ws = 0.0;
  double ys = 0.0;
  for (double& v : w) ws += (v = std::max(v, 0.0));
  for (double v : y) ys += v;
  SaddleResult r;
  r.b_weights.resize(cols);
  r.a_weights.resize(rows);
  for (std::size_t j = 0; j < cols; ++j) r.b_weights[j] = w[j] / ws;
  for (std::size_t i = 0; i < rows; ++i) r.a_weights[i] = y[i] / ys;
  r.value = 1.0 / ws - shift;

  double row_best = -kInfinity;
  for (std::size_t i = 0; i < rows; ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < cols; ++j) v += payoff[i][j] * r.b_weights[j];
    row_best = std::max(row_best, v);
  }
  double col_best = kInfinity;
  for (std::size_t j = 0; j < cols; ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < rows; ++i) v += payoff[i][j] * r.a_weights[i];
    col_best = std::min(col_best, v);
  }
  r.gap = std::max(0.0, row_best - col_best);
  return r;
}

SaddleResult minimax_solve(const PointHull& a, const PointHull& b, double tol) {
  if (a.dimension() != b.dimension()) throw ValidationError("minimax hulls have different dimensions");
  std::vector<std::vector<double>> g(a.size(), std::vector<double>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) g[i][j] = dot(a[i], b[j]);
  }
  auto r = solve_matrix_game(g);
  r.a_star = a.combine(r.a_weights);
  r.b_star = b.combine(r.b_weights);
  double hi = -kInfinity;
  for (std::size_t i = 0; i < a.size(); ++i) hi = std::max(hi, dot(a[i], r.b_star));
  double lo = kInfinity;
  for (std::size_t j = 0; j < b.size(); ++j) lo = std::min(lo, dot(r.a_star, b[j]));
  r.gap = std::max(0.0, hi - lo);
  if (r.gap > std::max(tol, 1e-9) * (1.0 + std::abs(r.value))) {
    throw CertificationError("minimax gap " + std::to_string(r.gap) + " above tolerance");
  }
  return r;
}

DualNormBounds dual_norm_upper(const ComplexSignal& phi, std::int64_t n, const FrequencyGrid& grid, int directions,
                               std::size_t max_rounds) {
  if (n < 1) throw ValidationError("dual norm needs N >= 1");
  if (grid.size() < n) throw ValidationError("dual norm needs a grid with M >= N");
  if (directions < 3) throw ValidationError("dual norm needs at least 3 directions");
  for (const auto* s : {&phi.re, &phi.im}) {
    const auto t = s->trimmed();
    if (!t.empty() && (t.lo() < 1 || t.hi() > n)) throw ValidationError("dual norm needs phi supported in [1, N]");
  }
  DualNormBounds out;
  const std::int64_t m = grid.size();
  const double sec = 1.0 / std::cos(std::numbers::pi / directions);
  const auto nn = static_cast<std::size_t>(n);

  {
    double linf = 0.0;
    double l2 = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
      const double re = phi.re(k);
      const double im = phi.im(k);
      linf = std::max(linf, std::hypot(re, im));
      l2 += re * re + im * im;
    }
    out.lower = linf;
    if (l2 > 0.0) {
      // f = phi / ||phi^||_inf; the certified sup of |phi^| bounds |re^ + i im^|.
      const auto hr = fourier_sup(phi.re, grid).certified_upper;
      const auto hi = fourier_sup(phi.im, grid).certified_upper;
      out.lower = std::max(out.lower, l2 / (hr + hi));
    }
    if (linf == 0.0) {
      out.converged = true;
      return out;
    }
  }

  // Columns: p_re, q_re, p_im, q_im for each n, every one in [0, sec(pi/D)];
  // the bounds are implied because M >= N makes the grid values determine f.
  std::vector<double> c(4 * nn);
  for (std::size_t k = 0; k < nn; ++k) {
    const auto idx = static_cast<std::int64_t>(k) + 1;
    c[k] = phi.re(idx);
    c[nn + k] = -phi.re(idx);
    c[2 * nn + k] = phi.im(idx);
    c[3 * nn + k] = -phi.im(idx);
  }
  DenseLp lp(c, std::vector<double>(4 * nn, sec));
  std::set<std::pair<std::int64_t, int>> present;
  std::vector<std::vector<double>> kept;
  std::vector<double> row(4 * nn);
  const auto add = [&](std::int64_t j, int d) {
    if (!present.insert({j, d}).second) return;
    for (std::size_t k = 0; k < nn; ++k) {
      const std::int64_t jn = (j * (static_cast<std::int64_t>(k) + 1)) % m;
      const double th = kTwoPi * (static_cast<double>(jn) / static_cast<double>(m) - static_cast<double>(d) / directions);
      const double co = std::cos(th);
      const double si = std::sin(th);
      row[k] = co;
      row[nn + k] = -co;
      row[2 * nn + k] = -si;
      row[3 * nn + k] = si;
    }
    lp.add_row(row, 1.0);
    kept.push_back(row);
  };
  for (int d = 0; d < directions; ++d) add(0, d);

  std::vector<double> x;
  for (;;) {
    ++out.rounds;
    const auto st = lp.solve();
    if (st != LpStatus::Optimal) break;
    x = lp.primal();
    std::vector<double> fr(nn);
    std::vector<double> fi(nn);
    for (std::size_t k = 0; k < nn; ++k) {
      fr[k] = x[k] - x[nn + k];
      fi[k] = x[2 * nn + k] - x[3 * nn + k];
    }
    const auto hr = fourier_grid(DiscreteSignal(1, fr), grid);
    const auto hi = fourier_grid(DiscreteSignal(1, fi), grid);
    struct Cand {
      double viol;
      std::int64_t j;
      int d;
    };
    std::vector<Cand> cands;
    for (std::int64_t j = 0; j < m; ++j) {
      const cplx z = hr[static_cast<std::size_t>(j)] + cplx(0.0, 1.0) * hi[static_cast<std::size_t>(j)];
      int d = static_cast<int>(std::lround(std::arg(z) / kTwoPi * directions)) % directions;
      if (d < 0) d += directions;
      const double v = (z * std::conj(unit_phase(static_cast<double>(d) / directions))).real() - 1.0;
      if (v > 1e-9 && !present.count({j, d})) cands.push_back({v, j, d});
    }
    if (cands.empty()) {
      out.converged = true;
      break;
    }
    if (out.rounds >= max_rounds) break;
    std::sort(cands.begin(), cands.end(), [](const Cand& p, const Cand& q) {
      if (p.viol != q.viol) return p.viol > q.viol;
      return p.j < q.j;
    });
    for (std::size_t t = 0; t < std::min<std::size_t>(32, cands.size()); ++t) add(cands[t].j, cands[t].d);
  }
  out.lp_value = lp.objective_value();
  out.rows = kept.size();

  // Weak duality over the box: c.x <= sum y_i + sum_k sec max(0, c_k - (A^T y)_k).
  const auto y = lp.row_duals();
  CompensatedSum ub;
  std::vector<double> aty(4 * nn, 0.0);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (y[i] == 0.0) continue;
    ub += y[i];
    for (std::size_t k = 0; k < 4 * nn; ++k) aty[k] += y[i] * kept[i][k];
  }
  for (std::size_t k = 0; k < 4 * nn; ++k) ub += sec * std::max(0.0, c[k] - aty[k]);
  out.upper = std::max(ub.value(), out.lp_value);
  return out;
}

std::pair<DiscreteSignal, DiscreteSignal> positive_part_split(const DiscreteSignal& psi) {
  if (psi.empty()) return {{}, {}};
  std::vector<double> pos(psi.length());
  std::vector<double> ind(psi.length());
  for (std::size_t i = 0; i < psi.length(); ++i) {
    const double v = psi.values()[i];
    pos[i] = std::max(v, 0.0);
    ind[i] = v >= 0.0 ? 1.0 : 0.0;
  }
  return {DiscreteSignal(psi.lo(), std::move(pos)), DiscreteSignal(psi.lo(), std::move(ind))};
}

}  // namespace tlab
