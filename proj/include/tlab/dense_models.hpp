#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tlab/claims.hpp"
#include "tlab/majorants.hpp"
#include "tlab/signal.hpp"
#include "tlab/spectrum_bohr.hpp"

namespace tlab {

enum class ModelVariant { Green, Hdr, Naslund, HahnBanach };

const char* to_string(ModelVariant v);
/// Accepts green, hdr, naslund, hb, hahn_banach.
ModelVariant parse_variant(const std::string& s);

/// Summary of the Bohr set used by a convolution model.
struct BohrSummary {
  std::size_t spectrum_r = 0;
  std::int64_t spectrum_grid_m = 0;
  bool spectrum_capped = false;
  std::size_t size = 0;
  std::int64_t radius = 0;
  double pigeonhole_floor = 0.0;
};

struct LpSummary {
  int directions = 0;
  /// Optimum of the row-generated LP.
  double t_star = 0.0;
  /// Lagrangian bound from the final duals; valid for every g in the box.
  double lower_bound = 0.0;
  /// t_star sec(pi/D) plus the Lipschitz slack of the recovered g.
  double linearized_upper = 0.0;
  std::size_t rows = 0;
  std::size_t rounds = 0;
  std::size_t iterations = 0;
  bool folded = false;
  bool converged = false;
};

struct DenseModelReport {
  ModelVariant variant = ModelVariant::Green;
  std::int64_t N = 0;
  double eps = 0.0;
  double eta = 0.0;
  int k = 0;
  double p = 0.0;
  double theta = 0.0;
  double c_p = 0.0;

  DiscreteSignal g;
  CertifiedSup fourier_err;
  double g_linf = 0.0;
  double g_l2_over_N = 0.0;
  double g_lk_over_N = 0.0;
  double mass_f = 0.0;
  double mass_g = 0.0;
  /// Mass of g outside [1, N].
  double boundary_mass = 0.0;

  std::optional<BohrSummary> bohr;
  std::optional<LpSummary> lp;
  std::vector<Claim> checks;
  std::vector<std::string> flags;
};

/// True iff 0 <= f(n) <= nu(n) for every n.
bool validate_majorization(const DiscreteSignal& f, const Majorant& nu);

/// Throws ValidationError naming the first offending n.
void require_majorization(const DiscreteSignal& f, const Majorant& nu);

struct ModelOptions {
  SpectrumOptions spectrum;
  /// Linearization directions for the LP.
  int directions = 16;
  /// Row-generation stopping tolerance, relative to max(1, ||f||_1).
  double tol = 1e-7;
  std::size_t max_rounds = 400;
  std::size_t rows_per_round = 64;
  std::size_t max_lp_iterations = 2000000;
  /// Naslund's C_p.
  double c_p = 1.0;
  /// Budget (tuples x support points) for exact k-point correlations over B.
  double tuple_budget = 3e7;
};

/// g = f * sigma * sigma.
DenseModelReport green_model(const DiscreteSignal& f, const Majorant& nu, double eps, double eta,
                             const FrequencyGrid& grid, const ModelOptions& opts = {});

/// g = f * sigma with eta = eps.
DenseModelReport hdr_model(const DiscreteSignal& f, const Majorant& nu, double eps, const FrequencyGrid& grid,
                           const ModelOptions& opts = {});

/// g = f * sigma with eps chosen from the L-infinity level of nu.
DenseModelReport naslund_model(const DiscreteSignal& f, const Majorant& nu, int k, double p,
                               const FrequencyGrid& grid, const ModelOptions& opts = {});

/// Minimizes the linearized grid error over 0 <= g <= 1_[N].
DenseModelReport hahn_banach_model(const DiscreteSignal& f, const Majorant& nu, const FrequencyGrid& grid,
                                   const ModelOptions& opts = {});

/// clamp(g, 0, 1) restricted to [1, N]: the LP's feasible version of g.
DiscreteSignal feasible_clamp(const DiscreteSignal& g, std::int64_t n);

/// max_j |f^(j/M) - g^(j/M)|.
double grid_error(const DiscreteSignal& f, const DiscreteSignal& g, const FrequencyGrid& grid);

/// Naslund's eps = min(1/2, (2 C_p / log(1/theta))^(1/(p+2))).
double naslund_eps(double theta, double p, double c_p);

/// max over h != 0 of sum_n nu(n) nu(n+h) / N, exact.
double max_pair_correlation(const Majorant& nu);

}  // namespace tlab
