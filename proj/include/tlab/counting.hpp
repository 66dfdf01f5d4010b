#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlab/signal.hpp"

namespace tlab {

/// c_1 x_1 + ... + c_s x_s = 0 with nonzero integer coefficients summing to 0.
class LinearForm {
public:
  explicit LinearForm(std::vector<std::int64_t> coeffs);

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::size_t s() const { return coeffs_.size(); }
  std::int64_t abs_sum() const;
  LinearForm negated() const;

private:
  std::vector<std::int64_t> coeffs_;
};

/// Parses "1,1,-2".
LinearForm parse_form(const std::string& text);

struct CountReport {
  /// sum over c.x = 0 of w_1(x_1) ... w_s(x_s).
  double total = 0.0;
  /// Constant tuples: sum_n w_1(n) ... w_s(n).
  double diagonal = 0.0;
  std::string method;
  std::int64_t wrap_modulus = 0;
};

/// Smallest power of two exceeding sum |c_i| H + 1, H = max |n| over the supports.
std::int64_t wrap_modulus(const LinearForm& form, const std::vector<DiscreteSignal>& weights);

/// Dilations F_i(m) = w_i(m / c_i) convolved together and read at 0.
CountReport count_weighted(const LinearForm& form, const std::vector<DiscreteSignal>& weights,
                           const ConvolutionLimits& limits = {});
/// Same weight in every slot.
CountReport count_weighted(const LinearForm& form, const DiscreteSignal& weight,
                           const ConvolutionLimits& limits = {});

/// Nested summation over the product of supports; refuses more than max_terms tuples.
CountReport count_brute(const LinearForm& form, const std::vector<DiscreteSignal>& weights,
                        double max_terms = 1e8);

/// (1/M') sum_j prod_i w_i^(c_i j / M') on the no-wraparound grid M' = wrap_modulus.
double count_fourier(const LinearForm& form, const std::vector<DiscreteSignal>& weights);

/// Exact integer count for integer-valued weights, or nullopt when a weight
/// is not integral or the work would exceed max_pairs.
std::optional<std::int64_t> count_exact_integer(const LinearForm& form, const std::vector<DiscreteSignal>& weights,
                                                double max_pairs = 2e8);

struct TransferCheck {
  double sup_err = 0.0;
  double delta = 0.0;
  double count_f = 0.0;
  double count_g = 0.0;
  double gap = 0.0;
  bool holds = false;
};

/// Delta = sup_err s max(||f||_1, ||g||_1)^(s-3) max(||f||_2, ||g||_2)^2 with
/// sup_err the certified sup of |f^ - g^|; checks |count(f) - count(g)| <= Delta.
TransferCheck transfer_error_bound(const LinearForm& form, const DiscreteSignal& f, const DiscreteSignal& g,
                                   const FrequencyGrid& grid);

struct ThresholdResult {
  double delta = 0.0;
  int k = 2;
  std::vector<std::int64_t> elements;
  /// C_k = sum g^k / N.
  double c_k = 0.0;
  std::int64_t N = 0;
  /// Number of integers in the support window of g.
  std::int64_t window_length = 0;
  /// (delta/2)^(k/(k-1)) C_k^(-1/(k-1)) N, valid when g lives on [1, N].
  double bound_interval = 0.0;
  /// Same argument with the true window length in place of N.
  double bound_window = 0.0;
  bool density_ok = false;
  bool holds_interval = false;
  bool holds_window = false;

  std::size_t size() const { return elements.size(); }
  DiscreteSignal indicator() const;
};

/// B = {x : g(x) >= delta/2} with the Hölder lower bounds on |B|.
ThresholdResult threshold_extract(const DiscreteSignal& g, double delta, int k, std::int64_t n);

struct ComparisonResult {
  double count_f = 0.0;
  double count_g = 0.0;
  double count_b = 0.0;
  double factor = 0.0;
  bool holds = false;
};

/// count(g) >= (delta/2)^s count(1_B).
ComparisonResult count_comparison(const LinearForm& form, const DiscreteSignal& f, const DiscreteSignal& g,
                                  const ThresholdResult& b);

/// exp(-C / delta^(1/(s-2-eps))).
double bloom_constant(double delta, int s, double eps_param, double c_abs);

}  // namespace tlab
