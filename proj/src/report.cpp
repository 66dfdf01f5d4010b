#include "tlab/report.hpp"

#include "tlab/io.hpp"

namespace tlab {

std::string report_schema_version() { return "tlab-report/1"; }

json measured(double x, ClaimKind kind) { return json{{"value", x}, {"kind", to_string(kind)}}; }

namespace {

constexpr auto kExact = ClaimKind::Exact;
constexpr auto kCert = ClaimKind::CertifiedBound;
constexpr auto kSampled = ClaimKind::SampledEstimate;

}  // namespace

json to_json(const Claim& c) {
  return json{{"name", c.name},     {"kind", to_string(c.kind)}, {"lhs", c.lhs},   {"rhs", c.rhs},
              {"slack", c.slack},   {"holds", c.holds},          {"required", c.required},
              {"note", c.note}};
}

json to_json(const std::vector<Claim>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(to_json(c));
  return a;
}

json to_json(const CertifiedSup& s) {
  return json{{"grid_max", measured(s.grid_max, kExact)},
              {"lipschitz_slack", s.lipschitz_slack},
              {"certified_lower", measured(s.certified_lower, kCert)},
              {"certified_upper", measured(s.certified_upper, kCert)},
              {"argmax", s.argmax}};
}

json to_json(const Majorant& nu) {
  return json{{"kind", nu.kind()},
              {"N", nu.N()},
              {"l1_mass", measured(nu.l1_mass(), kExact)},
              {"support_size", nu.signal().support_points().size()},
              {"resampled", nu.resampled()},
              {"seed_used", nu.seed_used()}};
}

json to_json(const MajorantDiagnostics& d) {
  json corr = json::object();
  for (const auto& [l, v] : d.corr) {
    const bool ex = d.corr_exhaustive.at(l);
    corr[std::to_string(l)] = {{"value", v},
                               {"kind", to_string(ex ? kExact : kSampled)},
                               {"exhaustive", ex},
                               {"tuples_tested", d.corr_tuples_tested.at(l)}};
  }
  json restr = json::object();
  for (const auto& [p, v] : d.restriction_estimate) restr[io::format_double(p)] = measured(v, kSampled);
  return json{{"theta_decay", measured(d.theta_decay, kCert)},
              {"theta_L2", measured(d.theta_L2, kExact)},
              {"theta_Linf", measured(d.theta_Linf, kExact)},
              {"corr", corr},
              {"restriction_estimate", restr},
              {"restriction_functions_tried", d.restriction_functions_tried},
              {"decay_sup", to_json(d.decay_sup)},
              {"provenance", {{"grid_M", d.grid_m}, {"seed", d.seed}, {"shift_samples", d.shift_samples}}}};
}

json to_json(const BohrSet& b) {
  return json{{"frequencies", b.frequencies},
              {"eps", b.eps},
              {"N", b.N},
              {"size", b.size()},
              {"elements", b.elements},
              {"pigeonhole_floor", measured(b.pigeonhole_floor, kCert)}};
}

json to_json(const DenseModelReport& r) {
  json j{{"variant", to_string(r.variant)},
         {"N", r.N},
         {"params", {{"eps", r.eps}, {"eta", r.eta}, {"k", r.k}, {"p", r.p}, {"theta", r.theta}, {"C_p", r.c_p}}},
         {"fourier_err", to_json(r.fourier_err)},
         {"g_linf", measured(r.g_linf, kExact)},
         {"g_l2_over_N", measured(r.g_l2_over_N, kExact)},
         {"g_lk_over_N", measured(r.g_lk_over_N, kExact)},
         {"mass_f", measured(r.mass_f, kExact)},
         {"mass_g", measured(r.mass_g, kExact)},
         {"boundary_mass", measured(r.boundary_mass, kExact)},
         {"g_support", {{"lo", r.g.lo()}, {"hi", r.g.hi()}}}};
  if (r.bohr) {
    const auto& b = *r.bohr;
    j["bohr"] = {{"spectrum_r", b.spectrum_r},
                 {"spectrum_grid_M", b.spectrum_grid_m},
                 {"spectrum_capped", b.spectrum_capped},
                 {"size", b.size},
                 {"radius", b.radius},
                 {"pigeonhole_floor", b.pigeonhole_floor}};
  }
  if (r.lp) {
    const auto& l = *r.lp;
    j["lp"] = {{"directions", l.directions},
               {"t_star", measured(l.t_star, kExact)},
               {"lower_bound", measured(l.lower_bound, kCert)},
               {"linearized_upper", measured(l.linearized_upper, kCert)},
               {"rows", l.rows},
               {"rounds", l.rounds},
               {"iterations", l.iterations},
               {"folded", l.folded},
               {"converged", l.converged}};
  }
  j["checks"] = to_json(r.checks);
  j["flags"] = r.flags;
  return j;
}

json to_json(const CountReport& r) {
  return json{{"total", measured(r.total, kExact)},
              {"diagonal", measured(r.diagonal, kExact)},
              {"method", r.method},
              {"wrap_modulus", r.wrap_modulus}};
}

json to_json(const TransferCheck& t) {
  return json{{"sup_err", measured(t.sup_err, kCert)}, {"delta", measured(t.delta, kCert)},
              {"count_f", measured(t.count_f, kExact)}, {"count_g", measured(t.count_g, kExact)},
              {"gap", measured(t.gap, kExact)},         {"holds", t.holds}};
}

json to_json(const ThresholdResult& t) {
  return json{{"delta", t.delta},
              {"k", t.k},
              {"size", t.size()},
              {"C_k", measured(t.c_k, kExact)},
              {"N", t.N},
              {"window_length", t.window_length},
              {"bound_interval_form", measured(t.bound_interval, kExact)},
              {"bound_window", measured(t.bound_window, kCert)},
              {"density_ok", t.density_ok},
              {"holds_interval_form", t.holds_interval},
              {"holds_window", t.holds_window}};
}

json to_json(const ComparisonResult& c) {
  return json{{"count_f", measured(c.count_f, kExact)},
              {"count_g", measured(c.count_g, kExact)},
              {"count_B", measured(c.count_b, kExact)},
              {"factor", c.factor},
              {"holds", c.holds}};
}

json to_json(const ProjectionResult& p) {
  json j{{"y0", p.y0},
         {"weights", p.weights},
         {"distance", measured(p.distance, kCert)},
         {"gap", p.gap},
         {"inside", p.inside},
         {"converged", p.converged},
         {"iterations", p.iterations},
         {"obtuse_max", p.obtuse_max}};
  if (p.witness) {
    j["witness"] = {{"normal", p.witness->normal},
                    {"anchor_value", p.witness->anchor_value},
                    {"projection", p.witness->projection},
                    {"distance", p.witness->distance},
                    {"max_violation", p.witness->max_violation}};
  }
  return j;
}

json to_json(const SaddleResult& s) {
  return json{{"a_star", s.a_star},       {"b_star", s.b_star},
              {"a_weights", s.a_weights}, {"b_weights", s.b_weights},
              {"value", measured(s.value, kExact)}, {"gap", measured(s.gap, kCert)}};
}

json to_json(const DualNormBounds& d) {
  return json{{"upper", measured(d.upper, kCert)}, {"lower", measured(d.lower, kCert)},
              {"lp_value", d.lp_value},            {"rows", d.rows},
              {"rounds", d.rounds},                {"converged", d.converged}};
}

json to_json(const PolyApprox& p) {
  return json{{"coefficients", p.coefficients},
              {"degree", p.degree},
              {"n_terms", p.n_terms},
              {"height", p.height},
              {"target_eps", p.target_eps},
              {"measured_sup_error", measured(p.measured_sup_error, kCert)},
              {"certificate",
               {{"samples", p.certificate.samples},
                {"sample_max", measured(p.certificate.sample_max, kSampled)},
                {"lipschitz_slack", p.certificate.lipschitz_slack},
                {"rounding_slack", p.certificate.rounding_slack}}}};
}

std::string render_report(const std::string& kind, const json& payload) {
  json out{{"schema", report_schema_version()}, {"report", kind}};
  for (const auto& [k, v] : payload.items()) out[k] = v;
  return out.dump(2) + "\n";
}

}  // namespace tlab
