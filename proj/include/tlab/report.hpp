#pragma once

#include <string>

#include "json.hpp"
#include "tlab/claims.hpp"
#include "tlab/convex_opt.hpp"
#include "tlab/counting.hpp"
#include "tlab/dense_models.hpp"
#include "tlab/majorants.hpp"
#include "tlab/spectrum_bohr.hpp"
#include "tlab/weierstrass.hpp"

namespace tlab {

using json = nlohmann::ordered_json;

/// Embedded in every report as "schema".
std::string report_schema_version();

/// {"value": x, "kind": ...}
json measured(double x, ClaimKind kind);

json to_json(const Claim& c);
json to_json(const std::vector<Claim>& cs);
json to_json(const CertifiedSup& s);
json to_json(const Majorant& nu);
json to_json(const MajorantDiagnostics& d);
json to_json(const BohrSet& b);
json to_json(const DenseModelReport& r);
json to_json(const CountReport& r);
json to_json(const TransferCheck& t);
json to_json(const ThresholdResult& t);
json to_json(const ComparisonResult& c);
json to_json(const ProjectionResult& p);
json to_json(const SaddleResult& s);
json to_json(const DualNormBounds& d);
json to_json(const PolyApprox& p);

/// Wraps a payload as {"schema": ..., "report": kind, ...payload} and dumps it
/// with a trailing newline. Output is byte-stable for equal inputs.
std::string render_report(const std::string& kind, const json& payload);

}  // namespace tlab
