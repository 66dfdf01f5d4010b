#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tlab/error.hpp"
#include "tlab/io.hpp"
#include "tlab/pipeline.hpp"
#include "tlab/report.hpp"

using namespace tlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitCertification = 4;

struct Globals {
  std::int64_t grid_m = 0;
  double tol = 1e-7;
  std::uint64_t seed = 1;
  bool strict = false;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError("cannot parse number '" + tok + "'");
    }
  }
  if (out.empty()) throw ValidationError("empty number list");
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_text_file(path, text);
  }
}

FrequencyGrid grid_for(const Globals& g, std::size_t span) {
  return g.grid_m > 0 ? FrequencyGrid(g.grid_m) : FrequencyGrid::default_for(span);
}

Majorant load_majorant(const std::string& path, std::int64_t n) {
  auto sig = io::read_signal_file(path);
  if (n <= 0) n = sig.hi();
  return Majorant(std::move(sig), n, "file");
}

// Exit code from claims and flags; strict mode also fails on flags.
int verdict(bool all_pass, const std::vector<std::string>& flags, const Globals& g) {
  if (!all_pass) return kExitCertification;
  if (g.strict && !flags.empty()) {
    std::cerr << "strict: flags raised:";
    for (const auto& f : flags) std::cerr << ' ' << f;
    std::cerr << '\n';
    return kExitCertification;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transference toolkit: majorants, dense models, counting and certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals glob;
  app.add_option("--grid-M", glob.grid_m, "Frequency grid size (0 = default)");
  app.add_option("--tol", glob.tol, "Solver tolerance");
  app.add_option("--seed", glob.seed, "Seed for randomized steps");
  app.add_flag("--strict", glob.strict, "Fail on any capping or hypothesis flag");

  int code = kExitOk;

  // majorant make / diagnose
  auto* maj = app.add_subcommand("majorant", "Build or diagnose a majorant");
  maj->require_subcommand(1);
  maj->fallthrough();
  std::string mk_kind = "sparse", mk_out;
  std::int64_t mk_n = 1000;
  double mk_exp = 2.0 / 3.0;
  auto* mk = maj->add_subcommand("make", "Write a majorant as CSV");
  mk->add_option("--kind", mk_kind)->check(CLI::IsMember({"uniform", "sparse", "squares", "primes"}));
  mk->add_option("--N", mk_n)->required();
  mk->add_option("--exponent", mk_exp);
  mk->add_option("--out", mk_out);
  mk->callback([&] {
    Majorant nu = [&] {
      if (mk_kind == "uniform") return make_uniform(mk_n);
      if (mk_kind == "squares") return make_squares(mk_n);
      if (mk_kind == "primes") return make_weighted_primes(mk_n);
      return make_random_sparse(mk_n, mk_exp, glob.seed);
    }();
    if (mk_out.empty()) {
      io::write_signal_csv(std::cout, nu.signal());
    } else {
      io::write_signal_file(mk_out, nu.signal());
    }
  });

  std::string dg_in, dg_report, dg_p = "4";
  std::int64_t dg_n = 0;
  int dg_kmax = 3;
  std::size_t dg_samples = 100000;
  auto* dg = maj->add_subcommand("diagnose", "Measure pseudorandomness constants of a majorant");
  dg->add_option("--in", dg_in)->required();
  dg->add_option("--N", dg_n, "Interval length (default: last support point)");
  dg->add_option("--kmax", dg_kmax);
  dg->add_option("--p", dg_p, "Comma-separated restriction exponents");
  dg->add_option("--shift-samples", dg_samples);
  dg->add_option("--report", dg_report);
  dg->callback([&] {
    const auto nu = load_majorant(dg_in, dg_n);
    DiagnoseOptions o;
    o.k_max = dg_kmax;
    o.p_list = parse_list(dg_p);
    o.shift_samples = dg_samples;
    o.seed = glob.seed;
    const auto d = diagnose(nu, grid_for(glob, static_cast<std::size_t>(nu.N())), o);
    emit(dg_report, render_report("majorant_diagnostics", json{{"majorant", to_json(nu)}, {"diagnostics", to_json(d)}}));
  });

  // bohr
  std::string b_freqs, b_out;
  double b_eps = 0.1;
  std::int64_t b_n = 1000;
  auto* bohr = app.add_subcommand("bohr", "Enumerate a Bohr set");
  bohr->add_option("--freqs", b_freqs)->required();
  bohr->add_option("--eps", b_eps)->required();
  bohr->add_option("--N", b_n)->required();
  bohr->add_option("--out", b_out);
  bohr->callback([&] {
    const auto b = bohr_enumerate(parse_list(b_freqs), b_eps, b_n);
    emit(b_out, render_report("bohr", to_json(b)));
  });

  // densify
  std::string d_variant = "hdr", d_f, d_nu, d_report, d_gout;
  double d_eps = 0.1, d_eta = 0.1, d_p = 4.0, d_cp = 1.0;
  int d_k = 3, d_dirs = 16;
  std::int64_t d_n = 0;
  auto* dens = app.add_subcommand("densify", "Build a bounded dense model g of f");
  dens->add_option("--variant", d_variant);
  dens->add_option("--f", d_f)->required();
  dens->add_option("--nu", d_nu)->required();
  dens->add_option("--N", d_n, "Interval length (default: last support point of nu)");
  dens->add_option("--eps", d_eps);
  dens->add_option("--eta", d_eta);
  dens->add_option("--k", d_k);
  dens->add_option("--p", d_p);
  dens->add_option("--Cp", d_cp);
  dens->add_option("--directions", d_dirs);
  dens->add_option("--report", d_report);
  dens->add_option("--g-out", d_gout);
  dens->callback([&] {
    const auto variant = parse_variant(d_variant);
    const auto nu = load_majorant(d_nu, d_n);
    const auto f = io::read_signal_file(d_f);
    ModelOptions mo;
    mo.tol = glob.tol;
    mo.directions = d_dirs;
    mo.c_p = d_cp;
    const auto span = static_cast<std::size_t>(2 * nu.N());
    DenseModelReport r;
    switch (variant) {
      case ModelVariant::Green: r = green_model(f, nu, d_eps, d_eta, grid_for(glob, span), mo); break;
      case ModelVariant::Hdr: r = hdr_model(f, nu, d_eps, grid_for(glob, span), mo); break;
      case ModelVariant::Naslund: r = naslund_model(f, nu, d_k, d_p, grid_for(glob, span), mo); break;
      case ModelVariant::HahnBanach:
        r = hahn_banach_model(f, nu, FrequencyGrid(glob.grid_m > 0 ? glob.grid_m : 1024), mo);
        break;
    }
    emit(d_report, render_report("dense_model", to_json(r)));
    if (!d_gout.empty()) io::write_signal_file(d_gout, r.g);
    code = verdict(all_hold(r.checks), r.flags, glob);
  });

  // count
  std::string c_form = "1,1,-2", c_weights, c_report;
  auto* cnt = app.add_subcommand("count", "Weighted count of solutions of a linear equation");
  cnt->add_option("--form", c_form);
  cnt->add_option("--weights", c_weights, "One CSV for all slots, or one per slot")->required();
  cnt->add_option("--report", c_report);
  cnt->callback([&] {
    const auto form = parse_form(c_form);
    std::vector<DiscreteSignal> w;
    for (const auto& p : split(c_weights)) w.push_back(io::read_signal_file(p));
    CountReport r;
    if (w.size() == 1) {
      r = count_weighted(form, w.front());
    } else if (w.size() == form.s()) {
      r = count_weighted(form, w);
    } else {
      throw ValidationError("--weights needs 1 or " + std::to_string(form.s()) + " files");
    }
    emit(c_report, render_report("count", json{{"form", form.coeffs()}, {"count", to_json(r)}}));
  });

  // minimax
  std::string mm_a, mm_b, mm_report;
  auto* mm = app.add_subcommand("minimax", "Saddle point of <a, b> over two hulls");
  mm->add_option("--A", mm_a)->required();
  mm->add_option("--B", mm_b)->required();
  mm->add_option("--report", mm_report);
  mm->callback([&] {
    const PointHull a(io::read_points_file(mm_a));
    const PointHull b(io::read_points_file(mm_b));
    emit(mm_report, render_report("minimax", to_json(minimax_solve(a, b, glob.tol))));
  });

  // project
  std::string pj_x, pj_a, pj_report;
  auto* pj = app.add_subcommand("project", "Nearest point of a hull, with separating hyperplane");
  pj->add_option("--x", pj_x)->required();
  pj->add_option("--A", pj_a)->required();
  pj->add_option("--report", pj_report);
  pj->callback([&] {
    const auto xs = io::read_points_file(pj_x);
    if (xs.size() != 1) throw ValidationError("--x must hold exactly one point");
    const PointHull a(io::read_points_file(pj_a));
    const auto r = project_onto_hull(xs.front(), a, glob.tol);
    emit(pj_report, render_report("projection", to_json(r)));
    code = verdict(r.converged, {}, glob);
  });

  // weierstrass
  double w_eps = 0.1;
  std::size_t w_samples = kDefaultSamples;
  std::string w_out;
  auto* ws = app.add_subcommand("weierstrass", "Polynomial approximation of the positive part");
  ws->add_option("--eps", w_eps)->required();
  ws->add_option("--samples", w_samples);
  ws->add_option("--out", w_out);
  ws->callback([&] { emit(w_out, render_report("weierstrass", to_json(build_positive_part(w_eps, w_samples)))); });

  // pipeline
  std::string pl_config, pl_report, pl_gout, pl_write;
  auto* pl = app.add_subcommand("pipeline", "End-to-end run from a key = value config");
  pl->add_option("--config", pl_config, "Config file (defaults used when omitted)");
  pl->add_option("--report", pl_report);
  pl->add_option("--g-out", pl_gout);
  pl->add_option("--write-config", pl_write, "Write the effective config and exit");
  pl->callback([&] {
    PipelineConfig cfg = pl_config.empty() ? PipelineConfig{} : read_pipeline_config(pl_config);
    if (glob.grid_m > 0) cfg.grid_m = glob.grid_m;
    if (app.count("--tol") > 0) cfg.tol = glob.tol;
    if (app.count("--seed") > 0) cfg.majorant_seed = cfg.selection_seed = glob.seed;
    cfg.strict = cfg.strict || glob.strict;
    glob.strict = cfg.strict;
    if (!pl_report.empty()) cfg.report_path = pl_report;
    if (!pl_gout.empty()) cfg.g_path = pl_gout;
    cfg.validate();
    if (!pl_write.empty()) {
      write_pipeline_config(pl_write, cfg);
      return;
    }
    const auto rep = run_pipeline(cfg);
    emit(cfg.report_path, rep.render());
    if (!cfg.g_path.empty()) io::write_signal_file(cfg.g_path, rep.g);
    code = verdict(rep.all_pass, rep.flags, glob);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const CertificationError& e) {
    std::cerr << "certification failed: " << e.what() << '\n';
    return kExitCertification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return code;
}
