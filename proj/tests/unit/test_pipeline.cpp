#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "tlab/error.hpp"
#include "tlab/pipeline.hpp"

using namespace tlab;

namespace {

PipelineConfig small(std::int64_t n, const std::string& variant) {
  PipelineConfig c;
  c.N = n;
  c.variant = variant;
  c.shift_samples = 2000;
  return c;
}

std::string error_of(const PipelineConfig& c) {
  try {
    run_pipeline(c);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("pipeline config: key-value round trip") {
  PipelineConfig c;
  c.N = 777;
  c.majorant = "squares";
  c.density_exponent = 0.7071067811865476;
  c.majorant_seed = 123456789012345ULL;
  c.delta = 1.0 / 3.0;
  c.selection = "random";
  c.form = "2,3,-5";
  c.variant = "naslund";
  c.eps = 0.05;
  c.eta = 0.2;
  c.k = 4;
  c.p = 6.5;
  c.c_p = 0.1 + 0.2;
  c.grid_m = 4096;
  c.tol = 1e-9;
  c.strict = true;
  c.report_path = "r.json";
  const auto back = PipelineConfig::from_key_values(c.to_key_values());
  CHECK(back.to_key_values() == c.to_key_values());
  CHECK(back.density_exponent == c.density_exponent);
  CHECK(back.c_p == c.c_p);
  CHECK(back.majorant_seed == c.majorant_seed);

  const auto path = (std::filesystem::temp_directory_path() / "tlab_cfg_roundtrip.txt").string();
  write_pipeline_config(path, c);
  CHECK(read_pipeline_config(path).to_key_values() == c.to_key_values());
  std::remove(path.c_str());

  auto kv = c.to_key_values();
  kv["bogus"] = "1";
  CHECK_THROWS_AS(PipelineConfig::from_key_values(kv), ValidationError);
  auto bad = c.to_key_values();
  bad["N"] = "12x";
  CHECK_THROWS_AS(PipelineConfig::from_key_values(bad), ValidationError);
  CHECK_THROWS_AS(read_pipeline_config("/nonexistent/cfg.txt"), ValidationError);
}

TEST_CASE("select_subset: stride and random rules") {
  const auto nu = make_uniform(20);
  CHECK(select_subset(nu, 0.5, "stride", 1) == std::vector<std::int64_t>{1, 3, 5, 7, 9, 11, 13, 15, 17, 19});
  CHECK(select_subset(nu, 0.3, "stride", 1) == std::vector<std::int64_t>{1, 5, 9, 13, 17});
  CHECK(select_subset(nu, 1.0, "stride", 1).size() == 20);
  CHECK(select_subset(nu, 0.0, "stride", 1).empty());

  const auto r1 = select_subset(nu, 0.25, "random", 9);
  CHECK(r1.size() == 5);
  CHECK(std::is_sorted(r1.begin(), r1.end()));
  CHECK(std::adjacent_find(r1.begin(), r1.end()) == r1.end());
  CHECK(select_subset(nu, 0.25, "random", 9) == r1);
  CHECK(select_subset(nu, 1.0, "random", 3).size() == 20);

  const auto sparse = make_random_sparse(3000, 2.0 / 3.0, 4);
  const auto support = sparse.signal().support_points();
  const auto rs = select_subset(sparse, 0.5, "random", 2);
  CHECK(std::includes(support.begin(), support.end(), rs.begin(), rs.end()));

  CHECK_THROWS_AS(select_subset(nu, 1.5, "stride", 1), ValidationError);
  CHECK_THROWS_AS(select_subset(nu, 0.5, "zigzag", 1), ValidationError);
}

TEST_CASE("pipeline: empty A completes with flags and zero counts") {
  auto c = small(400, "hdr");
  c.delta = 0.0;
  const auto r = run_pipeline(c);
  CHECK(r.body["counts"]["f"]["total"]["value"].get<double>() == 0.0);
  CHECK(r.body["counts"]["g"]["total"]["value"].get<double>() == 0.0);
  CHECK(std::find(r.flags.begin(), r.flags.end(), "empty_A") != r.flags.end());
  CHECK_FALSE(r.body.contains("threshold"));
  CHECK(r.all_pass);
}

TEST_CASE("pipeline: uniform nu with A = [N]") {
  for (const char* v : {"green", "hdr", "naslund", "hb"}) {
    auto c = small(300, v);
    c.majorant = "uniform";
    c.delta = 1.0;
    c.grid_m = 1024;
    const auto r = run_pipeline(c);
    CAPTURE(v);
    CHECK(r.all_pass);
    CHECK(r.body["selection"]["size"].get<std::size_t>() == 300);
    const double cf = r.body["counts"]["f"]["total"]["value"].get<double>();
    const double cg = r.body["counts"]["g"]["total"]["value"].get<double>();
    CHECK(std::abs(cf - cg) <= r.body["transfer"]["delta"]["value"].get<double>() + 1e-6 * cf);
  }
}

TEST_CASE("pipeline: sparse hdr run is deterministic and carries the schema") {
  PipelineConfig c;
  c.N = 5000;
  c.density_exponent = 2.0 / 3.0;
  c.majorant_seed = 7;
  c.delta = 0.5;
  c.variant = "hdr";
  c.form = "1,1,-2";
  const auto a = run_pipeline(c).render();
  const auto b = run_pipeline(c).render();
  CHECK(a == b);
  const auto j = json::parse(a);
  CHECK(j["schema"] == "tlab-report/1");
  CHECK(j["report"] == "pipeline");
  CHECK(j["all_pass"].get<bool>());
  for (const auto& claim : j["claims"]) {
    const auto kind = claim["kind"].get<std::string>();
    CHECK((kind == "exact" || kind == "certified-bound" || kind == "sampled-estimate"));
  }
  CHECK_FALSE(j["config"].contains("report_path"));
}

TEST_CASE("pipeline: errors carry the stage tag") {
  auto c = small(300, "hdr");
  c.form = "1,1,1";
  const auto msg = error_of(c);
  CHECK(msg.rfind("[", 0) == 0);
  CHECK(msg.find("]") != std::string::npos);

  auto d = small(300, "nonsense");
  CHECK_THROWS_AS(run_pipeline(d), ValidationError);
  CHECK(error_of(d).rfind("[config] ", 0) == 0);

  auto e = small(300, "hdr");
  e.majorant = "primes";
  e.N = 1;
  CHECK(error_of(e).rfind("[", 0) == 0);
}
