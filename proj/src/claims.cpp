#include "tlab/claims.hpp"

#include <algorithm>
#include <cmath>

namespace tlab {

const char* to_string(ClaimKind k) {
  switch (k) {
    case ClaimKind::Exact: return "exact";
    case ClaimKind::CertifiedBound: return "certified-bound";
    case ClaimKind::SampledEstimate: return "sampled-estimate";
  }
  return "unknown";
}

Claim make_claim(std::string name, ClaimKind kind, double lhs, double rhs, double slack, std::string note) {
  Claim c;
  c.name = std::move(name);
  c.kind = kind;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = slack;
  c.holds = std::isfinite(lhs) && lhs <= rhs + slack;
  c.note = std::move(note);
  return c;
}

bool all_hold(const std::vector<Claim>& claims) {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.holds || !c.required; });
}

}  // namespace tlab
