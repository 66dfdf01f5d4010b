#pragma once

#include <string>
#include <vector>

namespace tlab {

/// How a reported number was obtained.
enum class ClaimKind { Exact, CertifiedBound, SampledEstimate };

const char* to_string(ClaimKind k);

/// One checked inequality lhs <= rhs (+ slack).
struct Claim {
  std::string name;
  ClaimKind kind = ClaimKind::CertifiedBound;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
  /// Informational claims are reported but do not fail a run.
  bool required = true;
  std::string note;
};

Claim make_claim(std::string name, ClaimKind kind, double lhs, double rhs, double slack = 0.0,
                 std::string note = {});

/// True when every required claim holds.
bool all_hold(const std::vector<Claim>& claims);

}  // namespace tlab
