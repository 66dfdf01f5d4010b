#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlab/io.hpp"
#include "tlab/majorants.hpp"
#include "tlab/report.hpp"

namespace tlab {

struct PipelineConfig {
  std::int64_t N = 2000;
  /// uniform | sparse | squares | primes
  std::string majorant = "sparse";
  double density_exponent = 2.0 / 3.0;
  std::uint64_t majorant_seed = 1;
  /// Relative density of A inside supp nu, in [0, 1].
  double delta = 0.5;
  /// stride | random
  std::string selection = "stride";
  std::uint64_t selection_seed = 1;
  std::string form = "1,1,-2";
  std::string variant = "hdr";
  double eps = 0.1;
  double eta = 0.1;
  int k = 3;
  double p = 4.0;
  double c_p = 1.0;
  /// 0 picks the default grid for the window of g.
  std::int64_t grid_m = 0;
  double tol = 1e-7;
  int directions = 16;
  int k_max = 3;
  std::size_t shift_samples = 20000;
  bool strict = false;
  std::string report_path;
  std::string g_path;

  io::KeyValues to_key_values() const;
  static PipelineConfig from_key_values(const io::KeyValues& kv);
  void validate() const;
};

PipelineConfig read_pipeline_config(const std::string& path);
void write_pipeline_config(const std::string& path, const PipelineConfig& cfg);

struct PipelineReport {
  json body;
  /// Every required claim held.
  bool all_pass = false;
  /// Capping or hypothesis flags raised along the way.
  std::vector<std::string> flags;
  DiscreteSignal g;

  std::string render() const;
};

/// A = every ceil(1/delta)-th support point of nu, or a seeded uniform
/// subset of round(delta |supp nu|) points.
std::vector<std::int64_t> select_subset(const Majorant& nu, double delta, const std::string& rule,
                                        std::uint64_t seed);

/// Majorant, selection, diagnostics, dense model, counts, threshold and
/// transfer checks. Module errors are rethrown with the stage name prefixed.
PipelineReport run_pipeline(const PipelineConfig& cfg);

}  // namespace tlab
