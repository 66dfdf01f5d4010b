#include "tlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "tlab/error.hpp"

namespace tlab {

namespace {

std::int64_t parse_i64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const auto x = std::stoll(v, &pos);
    if (pos == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ValidationError("config key '" + key + "' expects an integer, got '" + v + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v[0] != '-') {
      const auto x = std::stoull(v, &pos);
      if (pos == v.size()) return x;
    }
  } catch (const std::exception&) {
  }
  throw ValidationError("config key '" + key + "' expects a non-negative integer, got '" + v + "'");
}

double parse_f64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const auto x = std::stod(v, &pos);
    if (pos == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ValidationError("config key '" + key + "' expects a number, got '" + v + "'");
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ValidationError("config key '" + key + "' expects true or false, got '" + v + "'");
}

template <typename F>
auto in_stage(const char* name, F&& fn) -> decltype(fn()) {
  const std::string tag = std::string("[") + name + "] ";
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw ValidationError(tag + e.what());
  } catch (const ResourceError& e) {
    throw ResourceError(tag + e.what());
  } catch (const CertificationError& e) {
    throw CertificationError(tag + e.what());
  } catch (const Error& e) {
    throw Error(tag + e.what());
  }
}

Majorant build_majorant(const PipelineConfig& cfg) {
  if (cfg.majorant == "uniform") return make_uniform(cfg.N);
  if (cfg.majorant == "sparse") return make_random_sparse(cfg.N, cfg.density_exponent, cfg.majorant_seed);
  if (cfg.majorant == "squares") return make_squares(cfg.N);
  if (cfg.majorant == "primes") return make_weighted_primes(cfg.N);
  throw ValidationError("unknown majorant kind '" + cfg.majorant + "'");
}

}  // namespace

io::KeyValues PipelineConfig::to_key_values() const {
  io::KeyValues kv;
  kv["N"] = std::to_string(N);
  kv["majorant"] = majorant;
  kv["density_exponent"] = io::format_double(density_exponent);
  kv["majorant_seed"] = std::to_string(majorant_seed);
  kv["delta"] = io::format_double(delta);
  kv["selection"] = selection;
  kv["selection_seed"] = std::to_string(selection_seed);
  kv["form"] = form;
  kv["variant"] = variant;
  kv["eps"] = io::format_double(eps);
  kv["eta"] = io::format_double(eta);
  kv["k"] = std::to_string(k);
  kv["p"] = io::format_double(p);
  kv["c_p"] = io::format_double(c_p);
  kv["grid_m"] = std::to_string(grid_m);
  kv["tol"] = io::format_double(tol);
  kv["directions"] = std::to_string(directions);
  kv["k_max"] = std::to_string(k_max);
  kv["shift_samples"] = std::to_string(shift_samples);
  kv["strict"] = strict ? "true" : "false";
  kv["report_path"] = report_path;
  kv["g_path"] = g_path;
  return kv;
}

PipelineConfig PipelineConfig::from_key_values(const io::KeyValues& kv) {
  PipelineConfig c;
  for (const auto& [k, v] : kv) {
    if (k == "N") c.N = parse_i64(k, v);
    else if (k == "majorant") c.majorant = v;
    else if (k == "density_exponent") c.density_exponent = parse_f64(k, v);
    else if (k == "majorant_seed") c.majorant_seed = parse_u64(k, v);
    else if (k == "delta") c.delta = parse_f64(k, v);
    else if (k == "selection") c.selection = v;
    else if (k == "selection_seed") c.selection_seed = parse_u64(k, v);
    else if (k == "form") c.form = v;
    else if (k == "variant") c.variant = v;
    else if (k == "eps") c.eps = parse_f64(k, v);
    else if (k == "eta") c.eta = parse_f64(k, v);
    else if (k == "k") c.k = static_cast<int>(parse_i64(k, v));
    else if (k == "p") c.p = parse_f64(k, v);
    else if (k == "c_p") c.c_p = parse_f64(k, v);
    else if (k == "grid_m") c.grid_m = parse_i64(k, v);
    else if (k == "tol") c.tol = parse_f64(k, v);
    else if (k == "directions") c.directions = static_cast<int>(parse_i64(k, v));
    else if (k == "k_max") c.k_max = static_cast<int>(parse_i64(k, v));
    else if (k == "shift_samples") c.shift_samples = parse_u64(k, v);
    else if (k == "strict") c.strict = parse_bool(k, v);
    else if (k == "report_path") c.report_path = v;
    else if (k == "g_path") c.g_path = v;
    else throw ValidationError("unknown config key '" + k + "'");
  }
  c.validate();
  return c;
}

void PipelineConfig::validate() const {
  if (N < 10) throw ValidationError("config: N must be >= 10");
  if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("config: delta must lie in [0, 1]");
  if (selection != "stride" && selection != "random") throw ValidationError("config: selection must be stride or random");
  parse_variant(variant);
  parse_form(form);
  if (!(eps > 0.0 && eps <= 0.5)) throw ValidationError("config: eps must lie in (0, 1/2]");
  if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("config: eta must lie in (0, 1]");
  if (k < 2) throw ValidationError("config: k must be >= 2");
  if (!(p >= 1.0)) throw ValidationError("config: p must be >= 1");
  if (grid_m < 0 || grid_m == 1) throw ValidationError("config: grid_m must be 0 or >= 2");
  if (!(tol > 0.0)) throw ValidationError("config: tol must be positive");
  if (directions < 3) throw ValidationError("config: directions must be >= 3");
  if (k_max < 2) throw ValidationError("config: k_max must be >= 2");
}

PipelineConfig read_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path);
  return PipelineConfig::from_key_values(io::read_key_values(in));
}

void write_pipeline_config(const std::string& path, const PipelineConfig& cfg) {
  std::ostringstream os;
  io::write_key_values(os, cfg.to_key_values());
  io::write_text_file(path, os.str());
}

std::string PipelineReport::render() const { return render_report("pipeline", body); }

std::vector<std::int64_t> select_subset(const Majorant& nu, double delta, const std::string& rule,
                                        std::uint64_t seed) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("selection density must lie in [0, 1]");
  const auto support = nu.signal().support_points();
  std::vector<std::int64_t> a;
  if (delta == 0.0 || support.empty()) return a;
  if (rule == "stride") {
    const auto step = static_cast<std::size_t>(std::ceil(1.0 / delta - 1e-12));
    for (std::size_t i = 0; i < support.size(); i += step) a.push_back(support[i]);
    return a;
  }
  if (rule == "random") {
    const auto want = static_cast<std::size_t>(std::llround(delta * static_cast<double>(support.size())));
    auto pool = support;
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates with a portable index draw.
    for (std::size_t i = 0; i < want; ++i) {
      const auto span = pool.size() - i;
      const auto j = i + std::min(span - 1, static_cast<std::size_t>(to_unit(rng()) * static_cast<double>(span)));
      std::swap(pool[i], pool[j]);
    }
    a.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
    std::sort(a.begin(), a.end());
    return a;
  }
  throw ValidationError("unknown selection rule '" + rule + "'");
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  in_stage("config", [&] { cfg.validate(); });
  PipelineReport out;
  json& body = out.body;
  std::vector<Claim> claims;
  auto& flags = out.flags;

  json cfg_json = json::object();
  for (const auto& [k, v] : cfg.to_key_values()) {
    if (k != "report_path" && k != "g_path") cfg_json[k] = v;
  }
  body["config"] = cfg_json;

  const auto nu = in_stage("majorant", [&] { return build_majorant(cfg); });
  body["majorant"] = to_json(nu);
  if (nu.resampled()) flags.push_back("majorant_resampled");

  const auto a = in_stage("selection", [&] { return select_subset(nu, cfg.delta, cfg.selection, cfg.selection_seed); });
  std::vector<double> fv(static_cast<std::size_t>(cfg.N), 0.0);
  for (auto x : a) fv[static_cast<std::size_t>(x - 1)] = nu.signal()(x);
  const DiscreteSignal f(1, std::move(fv));
  const double nd = static_cast<double>(cfg.N);
  body["selection"] = {{"rule", cfg.selection},
                       {"size", a.size()},
                       {"support_size", nu.signal().support_points().size()},
                       {"mass_f", measured(sum(f), ClaimKind::Exact)}};
  if (a.empty()) flags.push_back("empty_A");

  const auto variant = parse_variant(cfg.variant);
  std::int64_t m = cfg.grid_m;
  if (m == 0) {
    m = variant == ModelVariant::HahnBanach ? 1024 : FrequencyGrid::default_for(static_cast<std::size_t>(2 * cfg.N)).size();
  }
  const FrequencyGrid grid(m);
  body["grid_M"] = m;

  const auto diag = in_stage("diagnose", [&] {
    DiagnoseOptions o;
    o.k_max = cfg.k_max;
    o.p_list = {cfg.p};
    o.shift_samples = cfg.shift_samples;
    o.restriction_samples = 4;
    o.seed = cfg.majorant_seed;
    return diagnose(nu, grid, o);
  });
  body["diagnostics"] = to_json(diag);

  ModelOptions mo;
  mo.directions = cfg.directions;
  mo.tol = cfg.tol;
  mo.c_p = cfg.c_p;
  const auto model = in_stage("model", [&] {
    switch (variant) {
      case ModelVariant::Green: return green_model(f, nu, cfg.eps, cfg.eta, grid, mo);
      case ModelVariant::Hdr: return hdr_model(f, nu, cfg.eps, grid, mo);
      case ModelVariant::Naslund: return naslund_model(f, nu, cfg.k, cfg.p, grid, mo);
      case ModelVariant::HahnBanach: break;
    }
    return hahn_banach_model(f, nu, grid, mo);
  });
  body["model"] = to_json(model);
  claims.insert(claims.end(), model.checks.begin(), model.checks.end());
  for (const auto& fl : model.flags) flags.push_back("model:" + fl);
  out.g = model.g;

  const auto form = in_stage("count", [&] { return parse_form(cfg.form); });
  const auto cf = in_stage("count", [&] { return count_weighted(form, f); });
  const auto cg = in_stage("count", [&] { return count_weighted(form, model.g); });
  body["counts"] = {{"form", form.coeffs()},
                    {"f", to_json(cf)},
                    {"g", to_json(cg)},
                    {"trivial_ratio_f", measured(cf.total > 0.0 ? cf.diagonal / cf.total : 0.0, ClaimKind::Exact)}};

  // Largest density both f and g carry, so the threshold mass hypothesis holds for g.
  const double delta_t = std::min(sum(f), sum(model.g)) / nd;
  if (delta_t > 0.0) {
    const int k = variant == ModelVariant::Naslund ? cfg.k : 2;
    const auto thr = in_stage("threshold", [&] { return threshold_extract(model.g, delta_t, k, cfg.N); });
    body["threshold"] = to_json(thr);
    if (!thr.density_ok) flags.push_back("threshold_density_precondition");
    auto cw = make_claim("threshold_window", ClaimKind::CertifiedBound, thr.bound_window,
                         static_cast<double>(thr.size()), 0.0, "|B| >= Hölder bound with the true window length");
    cw.required = thr.density_ok;
    claims.push_back(cw);
    auto cpf = make_claim("threshold_interval_form", ClaimKind::CertifiedBound, thr.bound_interval,
                          static_cast<double>(thr.size()), 0.0, "|B| >= (delta/2)^(k/(k-1)) C_k^(-1/(k-1)) N");
    cpf.required = false;
    claims.push_back(cpf);
    const auto cmp = in_stage("threshold", [&] { return count_comparison(form, f, model.g, thr); });
    body["comparison"] = to_json(cmp);
    claims.push_back(make_claim("count_comparison", ClaimKind::Exact, cmp.factor * cmp.count_b, cmp.count_g,
                                1e-9 * std::max(1.0, cmp.count_g), "count(g) >= (delta/2)^s count(1_B)"));
  }

  const auto tr = in_stage("transfer", [&] { return transfer_error_bound(form, f, model.g, grid); });
  body["transfer"] = to_json(tr);
  claims.push_back(make_claim("transfer_chain", ClaimKind::CertifiedBound, tr.gap, tr.delta,
                              1e-6 * std::max({1.0, std::abs(tr.count_f), std::abs(tr.count_g)}),
                              "|count(f) - count(g)| <= transfer bound"));

  out.all_pass = all_hold(claims);
  body["claims"] = to_json(claims);
  body["flags"] = flags;
  body["all_pass"] = out.all_pass;
  return out;
}

}  // namespace tlab
