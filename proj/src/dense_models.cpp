#include "tlab/dense_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "tlab/error.hpp"
#include "tlab/simplex.hpp"

namespace tlab {

const char* to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::Green: return "green";
    case ModelVariant::Hdr: return "hdr";
    case ModelVariant::Naslund: return "naslund";
    case ModelVariant::HahnBanach: return "hahn_banach";
  }
  return "unknown";
}

ModelVariant parse_variant(const std::string& s) {
  if (s == "green") return ModelVariant::Green;
  if (s == "hdr") return ModelVariant::Hdr;
  if (s == "naslund") return ModelVariant::Naslund;
  if (s == "hb" || s == "hahn_banach") return ModelVariant::HahnBanach;
  throw ValidationError("unknown model variant '" + s + "'");
}

namespace {

std::int64_t first_violation(const DiscreteSignal& f, const Majorant& nu) {
  const auto& v = nu.signal();
  for (std::size_t i = 0; i < f.length(); ++i) {
    const std::int64_t n = f.lo() + static_cast<std::int64_t>(i);
    const double x = f.values()[i];
    if (x < 0.0 || x > v(n)) return n;
  }
  return std::numeric_limits<std::int64_t>::min();
}

double sum_pow(const DiscreteSignal& g, int k) {
  CompensatedSum acc;
  for (double x : g.values()) acc += std::pow(x, k);
  return acc.value();
}

double mass_outside(const DiscreteSignal& g, std::int64_t n) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < g.length(); ++i) {
    const std::int64_t m = g.lo() + static_cast<std::int64_t>(i);
    if (m < 1 || m > n) acc += g.values()[i];
  }
  return acc.value();
}

void fill_common(DenseModelReport& r, const DiscreteSignal& f, const Majorant& nu, const FrequencyGrid& grid) {
  r.N = nu.N();
  const double nd = static_cast<double>(r.N);
  r.fourier_err = fourier_sup_diff(f, r.g, grid);
  r.g_linf = lp_norm(r.g, kInfinity);
  r.g_l2_over_N = sum_pow(r.g, 2) / nd;
  r.mass_f = sum(f);
  r.mass_g = sum(r.g);
  r.boundary_mass = mass_outside(r.g, r.N);
  const double scale = std::max(1.0, lp_norm(f, 1.0));
  r.checks.push_back(make_claim("mass_transfer", ClaimKind::CertifiedBound, std::abs(r.mass_g - r.mass_f),
                                r.fourier_err.certified_upper, 1e-9 * scale,
                                "|sum g - sum f| <= certified sup |f^ - g^|"));
}

/// Shared body of the convolution constructions; `power` is the number of
/// sigma factors.
DenseModelReport convolution_model(ModelVariant variant, const DiscreteSignal& f, const Majorant& nu, double eps,
                                   double eta, int power, const FrequencyGrid& grid, const ModelOptions& opts,
                                   BohrSet* bohr_out = nullptr) {
  require_majorization(f, nu);
  if (!(eps > 0.0 && eps <= 0.5)) throw ValidationError("eps must lie in (0, 1/2]");
  if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("eta must lie in (0, 1]");
  DenseModelReport r;
  r.variant = variant;
  r.eps = eps;
  r.eta = eta;
  const std::int64_t n = nu.N();
  const double mass_nu = nu.l1_mass();

  const auto sp = spectrum(f, nu, eta, opts.spectrum);
  if (sp.capped) r.flags.push_back("spectrum_grid_capped");
  const auto bohr = bohr_enumerate(sp.representatives, eps, n);
  const auto sigma = bohr_measure(bohr);
  BohrSummary bs;
  bs.spectrum_r = sp.r();
  bs.spectrum_grid_m = sp.grid_m;
  bs.spectrum_capped = sp.capped;
  bs.size = bohr.size();
  bs.radius = bohr.elements.back();
  bs.pigeonhole_floor = bohr.pigeonhole_floor;
  r.bohr = bs;
  if (bohr_out != nullptr) *bohr_out = bohr;

  DiscreteSignal g = f.empty() ? DiscreteSignal{} : convolve(f, sigma);
  if (power == 2 && !g.empty()) g = convolve(g, sigma);
  r.g = std::move(g);
  fill_common(r, f, nu, grid);

  const double scale = std::max(1.0, lp_norm(f, 1.0));
  const auto fg = fourier_grid(f, grid);
  const auto gg = fourier_grid(r.g, grid);
  const auto sg = fourier_grid(sigma, grid);
  double off_max = 0.0;
  double identity_err = 0.0;
  for (std::size_t j = 0; j < fg.size(); ++j) {
    const cplx sp_pow = power == 2 ? sg[j] * sg[j] : sg[j];
    identity_err = std::max(identity_err, std::abs(gg[j] - fg[j] * sp_pow));
    if (std::abs(fg[j]) < eta * mass_nu) off_max = std::max(off_max, std::abs(fg[j] - gg[j]));
  }
  r.checks.push_back(make_claim("off_spectrum", ClaimKind::Exact, off_max, 2.0 * eta * mass_nu, 1e-9 * scale,
                                "grid points with |f^| < eta ||nu||_1: |f^ - g^| <= 2 eta ||nu||_1"));
  r.checks.push_back(make_claim("convolution_identity", ClaimKind::Exact, identity_err / scale, 1e-8, 0.0,
                                "max_j |g^ - f^ sigma^^c| / max(1, ||f||_1)"));

  double rep_max = 0.0;
  for (double a : sp.representatives) rep_max = std::max(rep_max, std::abs(1.0 - fourier_eval(sigma, a)));
  r.checks.push_back(make_claim("representative_phase", ClaimKind::Exact, rep_max, kTwoPi * eps, 1e-12,
                                "max_i |1 - sigma^(alpha_i)| <= 2 pi eps"));
  return r;
}

}  // namespace

bool validate_majorization(const DiscreteSignal& f, const Majorant& nu) {
  return first_violation(f, nu) == std::numeric_limits<std::int64_t>::min();
}

void require_majorization(const DiscreteSignal& f, const Majorant& nu) {
  const auto n = first_violation(f, nu);
  if (n != std::numeric_limits<std::int64_t>::min()) {
    throw ValidationError("f is not majorized by nu: 0 <= f(n) <= nu(n) fails at n = " + std::to_string(n));
  }
}

double max_pair_correlation(const Majorant& nu) {
  const auto& v = nu.signal();
  if (v.empty()) return 0.0;
  const auto auto_corr = convolve(v, v.reflected());
  double best = 0.0;
  for (std::size_t i = 0; i < auto_corr.length(); ++i) {
    if (auto_corr.lo() + static_cast<std::int64_t>(i) == 0) continue;
    best = std::max(best, auto_corr.values()[i]);
  }
  // FFT rounding is far below this margin; it keeps the value an upper bound.
  const double l2 = lp_norm(v, 2.0);
  best += 1e-10 * l2 * l2;
  return best / static_cast<double>(nu.N());
}

DenseModelReport green_model(const DiscreteSignal& f, const Majorant& nu, double eps, double eta,
                             const FrequencyGrid& grid, const ModelOptions& opts) {
  auto r = convolution_model(ModelVariant::Green, f, nu, eps, eta, 2, grid, opts);
  const double nd = static_cast<double>(nu.N());
  r.checks.push_back(make_claim("green_error_bound", ClaimKind::CertifiedBound, r.fourier_err.certified_upper,
                                8.0 * (eps + eta) * nd, 0.0, "certified sup |f^ - g^| <= 8 (eps + eta) N"));
  const auto decay = fourier_sup_diff(nu.signal(), DiscreteSignal::interval_indicator(nu.N()), grid);
  r.theta = decay.certified_upper / nd;
  const double bsize = static_cast<double>(r.bohr->size);
  r.checks.push_back(make_claim("green_pointwise", ClaimKind::CertifiedBound, r.g_linf,
                                1.0 + r.theta * nd / bsize, 1e-12,
                                "g(n) <= 1 + theta_decay N / |B|"));
  return r;
}

DenseModelReport hdr_model(const DiscreteSignal& f, const Majorant& nu, double eps, const FrequencyGrid& grid,
                           const ModelOptions& opts) {
  auto r = convolution_model(ModelVariant::Hdr, f, nu, eps, eps, 1, grid, opts);
  const double nd = static_cast<double>(nu.N());
  const double l2 = lp_norm(nu.signal(), 2.0);
  r.theta = l2 * l2 / (nd * nd);
  const double corr2 = max_pair_correlation(nu);
  const double bsize = static_cast<double>(r.bohr->size);
  const double rhs = r.theta * nd * nd / bsize + 2.0 * corr2 * nd;
  r.checks.push_back(make_claim("hdr_l2_chain", ClaimKind::CertifiedBound, r.g_l2_over_N * nd, rhs,
                                1e-9 * rhs, "sum g^2 <= theta_L2 N^2 / |B| + 2 corr_2 N"));
  r.k = 2;
  r.g_lk_over_N = r.g_l2_over_N;
  return r;
}

double naslund_eps(double theta, double p, double c_p) {
  if (!(theta > 0.0 && theta < 1.0)) throw ValidationError("Naslund eps needs 0 < theta < 1");
  if (!(p > 0.0) || !(c_p > 0.0)) throw ValidationError("Naslund eps needs p > 0 and C_p > 0");
  return std::min(0.5, std::pow(2.0 * c_p / std::log(1.0 / theta), 1.0 / (p + 2.0)));
}

namespace {

double binomial(double n, int k) {
  if (k < 0 || n < k) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= (n - k + i) / i;
  return r;
}

/// max over distinct l-subsets {b_1 < ... < b_l} of B of sum_n prod_j nu(n - b_j), or -1 when the
/// enumeration would exceed the budget.
double exact_tuple_correlation(const Majorant& nu, const std::vector<std::int64_t>& b, int l, double budget) {
  const auto support = nu.signal().support_points();
  const double cost = binomial(static_cast<double>(b.size()), l) * static_cast<double>(support.size());
  if (cost > budget || static_cast<int>(b.size()) < l) return -1.0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
  std::vector<std::int64_t> shifts(static_cast<std::size_t>(l));
  double best = 0.0;
  for (;;) {
    for (int i = 0; i < l; ++i) shifts[static_cast<std::size_t>(i)] = b[idx[0]] - b[idx[static_cast<std::size_t>(i)]];
    best = std::max(best, correlation(nu.signal(), shifts));
    int pos = l - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == b.size() - static_cast<std::size_t>(l - pos)) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < l; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

}  // namespace

DenseModelReport naslund_model(const DiscreteSignal& f, const Majorant& nu, int k, double p,
                               const FrequencyGrid& grid, const ModelOptions& opts) {
  if (k < 2) throw ValidationError("Naslund model needs k >= 2");
  const double nd = static_cast<double>(nu.N());
  const double theta = lp_norm(nu.signal(), kInfinity) / nd;
  if (!(theta < 1.0)) throw ValidationError("Naslund model needs theta_Linf < 1");
  const double eps = naslund_eps(theta, p, opts.c_p);

  BohrSet b_set;
  auto r = convolution_model(ModelVariant::Naslund, f, nu, eps, eps, 1, grid, opts, &b_set);
  r.k = k;
  r.p = p;
  r.theta = theta;
  r.c_p = opts.c_p;
  r.g_lk_over_N = sum_pow(r.g, k) / nd;
  if (static_cast<double>(k) > 0.5 * std::sqrt(std::log(1.0 / theta))) r.flags.push_back("k_above_limit");

  const double pairs = std::pow(2.0, static_cast<double>(k) * (k - 1) / 2.0);
  const double bsize = static_cast<double>(r.bohr->size);
  const double needed = static_cast<double>(k) * pairs * theta * nd;
  if (bsize < needed) r.flags.push_back("unverified boundedness");

  // Multiplicity collapse: a k-tuple of B with l distinct entries costs at
  // most (theta N)^(k-l) times an l-point correlation.
  const double corr2 = max_pair_correlation(nu);
  double bound = 0.0;
  for (int l = 1; l <= k; ++l) {
    double cb = 0.0;
    if (l == 1) {
      cb = nu.l1_mass() / nd;
    } else if (l == 2) {
      cb = corr2;
    } else {
      cb = std::pow(theta * nd, l - 2) * corr2;
      const double exact = exact_tuple_correlation(nu, b_set.elements, l, opts.tuple_budget);
      if (exact >= 0.0) cb = std::min(cb, exact / nd * (1.0 + 1e-12));
    }
    bound += pairs * std::pow(theta * nd / bsize, k - l) * cb;
  }
  bound *= nd;
  r.checks.push_back(make_claim("naslund_multiplicity_collapse", ClaimKind::CertifiedBound, r.g_lk_over_N * nd,
                                bound, 1e-9 * bound,
                                "sum g^k <= N sum_l 2^C(k,2) (theta N/|B|)^(k-l) corr_l"));
  return r;
}

DiscreteSignal feasible_clamp(const DiscreteSignal& g, std::int64_t n) {
  return g.restricted(1, n).clamped(0.0, 1.0);
}

double grid_error(const DiscreteSignal& f, const DiscreteSignal& g, const FrequencyGrid& grid) {
  const auto d = fourier_grid(f - g, grid);
  double m = 0.0;
  for (const auto& z : d) m = std::max(m, std::abs(z));
  return m;
}

DenseModelReport hahn_banach_model(const DiscreteSignal& f, const Majorant& nu, const FrequencyGrid& grid,
                                   const ModelOptions& opts) {
  require_majorization(f, nu);
  if (opts.directions < 3) throw ValidationError("LP needs at least 3 directions");
  DenseModelReport rep;
  rep.variant = ModelVariant::HahnBanach;
  const std::int64_t n = nu.N();
  const std::int64_t m = grid.size();
  const int dirs = opts.directions;

  // Columns are residues r mod M with c_r = #{n in [1,N] : n = r mod M} > 0;
  // the grid constraints only see G(r) = sum over the residue class.
  std::vector<std::int64_t> residue;
  std::vector<double> cap;
  {
    std::vector<double> count(static_cast<std::size_t>(m), 0.0);
    for (std::int64_t x = 1; x <= n; ++x) count[static_cast<std::size_t>(x % m)] += 1.0;
    for (std::int64_t r = 0; r < m; ++r) {
      if (count[static_cast<std::size_t>(r)] > 0.0) {
        residue.push_back(r);
        cap.push_back(count[static_cast<std::size_t>(r)]);
      }
    }
  }
  const std::size_t nv = residue.size();
  std::vector<double> objective(nv + 1, 0.0);
  objective[nv] = -1.0;
  std::vector<double> upper = cap;
  upper.push_back(DenseLp::kInf);
  DenseLp lp(objective, upper);

  const auto fhat = fourier_grid(f, grid);
  const double scale = std::max(1.0, lp_norm(f, 1.0));
  const double tol_abs = opts.tol * scale;

  struct Row {
    std::int64_t j;
    int d;
    double rhs_re;  // Re[f^(j/M) conj(u_d)]
  };
  std::vector<Row> rows;
  std::set<std::pair<std::int64_t, int>> present;
  std::vector<double> coeffs(nv + 1);
  const auto row_cos = [&](std::int64_t j, int d, std::size_t i) {
    const std::int64_t jr = (j * residue[i]) % m;
    const double ph = static_cast<double>(jr) / static_cast<double>(m) - static_cast<double>(d) / dirs;
    return std::cos(kTwoPi * ph);
  };
  const auto add = [&](std::int64_t j, int d) {
    if (!present.insert({j, d}).second) return false;
    const cplx u = unit_phase(static_cast<double>(d) / dirs);
    const double b = (fhat[static_cast<std::size_t>(j)] * std::conj(u)).real();
    for (std::size_t i = 0; i < nv; ++i) coeffs[i] = -row_cos(j, d, i);
    coeffs[nv] = -1.0;
    lp.add_row(coeffs, -b);
    rows.push_back({j, d, b});
    return true;
  };

  for (int d = 0; d < dirs; ++d) add(0, d);
  {
    std::vector<std::int64_t> order;
    for (std::int64_t j = 1; j <= m / 2; ++j) order.push_back(j);
    std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
      return std::abs(fhat[static_cast<std::size_t>(a)]) > std::abs(fhat[static_cast<std::size_t>(b)]);
    });
    for (std::size_t t = 0; t < std::min<std::size_t>(8, order.size()); ++t) {
      for (int d = 0; d < dirs; ++d) add(order[t], d);
    }
  }

  LpSummary ls;
  ls.directions = dirs;
  ls.folded = m < n;
  std::vector<double> x;
  for (;;) {
    ++ls.rounds;
    const std::size_t budget = opts.max_lp_iterations > lp.iterations() ? opts.max_lp_iterations - lp.iterations() : 0;
    const auto st = lp.solve(budget);
    if (st == LpStatus::Infeasible || st == LpStatus::Unbounded) {
      throw Error(std::string("Hahn-Banach LP reported ") + to_string(st) + " on a feasible problem");
    }
    x = lp.primal();
    if (st == LpStatus::IterationLimit) {
      rep.flags.push_back("lp_iteration_limit");
      break;
    }
    std::vector<double> folded(static_cast<std::size_t>(m), 0.0);
    for (std::size_t i = 0; i < nv; ++i) folded[static_cast<std::size_t>(residue[i])] = x[i];
    const auto ghat = fourier_grid(DiscreteSignal(0, folded), grid);
    const double t = x[nv];
    struct Cand {
      double viol;
      std::int64_t j;
      int d;
    };
    std::vector<Cand> cands;
    for (std::int64_t j = 0; j < m; ++j) {
      const cplx z = fhat[static_cast<std::size_t>(j)] - ghat[static_cast<std::size_t>(j)];
      const double ang = std::arg(z) / kTwoPi * dirs;
      int d = static_cast<int>(std::lround(ang)) % dirs;
      if (d < 0) d += dirs;
      const double v = (z * std::conj(unit_phase(static_cast<double>(d) / dirs))).real() - t;
      if (v > tol_abs && !present.count({j, d})) cands.push_back({v, j, d});
    }
    if (cands.empty()) {
      ls.converged = true;
      break;
    }
    if (ls.rounds >= opts.max_rounds) {
      rep.flags.push_back("lp_round_limit");
      break;
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.viol != b.viol) return a.viol > b.viol;
      return a.j < b.j;
    });
    for (std::size_t c = 0; c < std::min(opts.rows_per_round, cands.size()); ++c) add(cands[c].j, cands[c].d);
  }

  ls.t_star = -lp.objective_value();
  ls.rows = rows.size();
  ls.iterations = lp.iterations();

  // Lagrangian bound: for y in the simplex, every feasible (G, t) has
  // t >= sum_i y_i b_i - sum_r G_r w_r >= sum_i y_i b_i - sum_r c_r max(w_r, 0).
  auto y = lp.row_duals();
  double ysum = 0.0;
  for (double v : y) ysum += v;
  if (ysum > 0.0) {
    CompensatedSum lb;
    std::vector<double> w(nv, 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (y[i] == 0.0) continue;
      const double yi = y[i] / ysum;
      lb += yi * rows[i].rhs_re;
      for (std::size_t v = 0; v < nv; ++v) w[v] += yi * row_cos(rows[i].j, rows[i].d, v);
    }
    for (std::size_t v = 0; v < nv; ++v) lb += -cap[v] * std::max(w[v], 0.0);
    ls.lower_bound = std::max(0.0, lb.value());
  }

  std::vector<double> gv(static_cast<std::size_t>(n), 0.0);
  for (std::size_t i = 0; i < nv; ++i) {
    const double per = std::clamp(x[i] / cap[i], 0.0, 1.0);
    for (std::int64_t xn = residue[i] == 0 ? m : residue[i]; xn <= n; xn += m) gv[static_cast<std::size_t>(xn - 1)] = per;
  }
  rep.g = DiscreteSignal(1, std::move(gv));
  fill_common(rep, f, nu, grid);
  const double sec = 1.0 / std::cos(std::numbers::pi / dirs);
  ls.linearized_upper = ls.t_star * sec + rep.fourier_err.lipschitz_slack;
  rep.lp = ls;

  rep.checks.push_back(make_claim("lp_lower_le_tstar", ClaimKind::CertifiedBound, ls.lower_bound, ls.t_star,
                                  1e-7 * scale, "Lagrangian bound <= LP optimum"));
  if (ls.converged) {
    rep.checks.push_back(make_claim("lp_linearization", ClaimKind::CertifiedBound, rep.fourier_err.grid_max,
                                    ls.t_star * sec, 2.0 * tol_abs * sec,
                                    "grid max |f^ - g^| <= t* sec(pi/D)"));
  }
  return rep;
}

}  // namespace tlab
