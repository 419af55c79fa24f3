#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zygmund/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace zygmund;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("zygmund_test_" + name);
  fs::remove_all(p);
  return p;
}

} // namespace

TEST_CASE("config parsing") {
  const auto std_cfg = ExperimentConfig::standard();
  CHECK(std_cfg.kinds.size() == 4);
  CHECK(std_cfg.phis.size() == 4);
  CHECK(std_cfg.gs.size() == 3);
  CHECK(std_cfg.alphas.size() == 5);

  const auto c = config_from_json({{"kinds", {"vgcphi"}}, {"alpha", {1.0}}, {"nseq", 512},
                                   {"grid", {{"angles", 64}, {"jmax", 20}}}, {"seed", 9}});
  CHECK(c.kinds == std::vector<ProductKind>{ProductKind::VgCphi});
  CHECK(c.n_seq == 512);
  CHECK(c.grid.angles == 64);
  CHECK(c.grid.j_max == 20);
  CHECK(c.seed == 9);
  CHECK(c.betas == std_cfg.betas);
  CHECK(config_from_json(to_json(c)).n_seq == 512);

  CHECK_THROWS_AS(config_from_json({{"alpha", json::array()}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"beta", {1.0, -2.0}}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"kinds", {"nope"}}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"nseq", 0}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::array()), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("monomial asymptotics") {
  const std::vector<double> alphas{0.5, 1.0, 2.0};
  const std::vector<std::size_t> ns{1000, 10000};
  const auto r = run_monomial_study(alphas, ns);
  REQUIRE(r.power.size() == 6);
  for (const auto& row : r.power) {
    if (row.n == 10000)
      CHECK(std::abs(row.rel_error) < 0.01);
  }
  CHECK(r.power[3].target == doctest::Approx(2.0 / std::exp(1.0)));
  // frozen from an independent 1-D search
  CHECK(r.log[0].scaled == doctest::Approx(std::log(1000.0) * 0.098279844404251988).epsilon(1e-9));

  const auto cps = default_checkpoints();
  CHECK(cps.front() == 10);
  CHECK(cps.back() == 10'000'000);
  CHECK(cps.size() == 25);
  CHECK_THROWS_AS(run_monomial_study(alphas, std::vector<std::size_t>{20'000'000}), std::invalid_argument);

  const auto csv = power_csv(r);
  CHECK(csv.rfind("alpha,n,scaled_norm,target,rel_error\n", 0) == 0);
  CHECK(log_csv(r).rfind("n,log_n_times_norm\n", 0) == 0);
}

TEST_CASE("identity suite") {
  const DiskGrid grid(GridParams{20, 128, 20, 2});
  const auto a = run_identity_suite(42, 10, grid);
  const auto b = run_identity_suite(42, 10, grid);
  CHECK(a.all_pass());
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.checks.size() == 4);
  CHECK_THROWS_AS(run_identity_suite(42, 0, grid), std::invalid_argument);
}

TEST_CASE("sweep") {
  auto cfg = config_from_json({{"kinds", {"VgCphi", "UgCphi"}},
                               {"phi", {{{"family", "scaled_identity"}, {"scale", 0.5}},
                                        {{"family", "scaled_identity"}, {"scale", 1.0}},
                                        {{"family", "poly"}, {"coeffs", {0.5, 0.9}}}}},
                               {"g", {{{"family", "identity"}}}},
                               {"alpha", {0.5, 2.0}},
                               {"beta", {1.0}},
                               {"nseq", 512},
                               {"grid", {{"angles", 128}}}});
  cfg.out_dir = scratch("sweep_a").string();
  const auto r1 = run_sweep(cfg);
  REQUIRE(r1.cells.size() == 12);
  // the non-self-map is recorded per cell, the rest still runs
  CHECK(r1.errors == 4);
  for (const auto& c : r1.cells) {
    if (c.phi_label == "z/2") {
      REQUIRE(c.essnorm.has_value());
      CHECK(c.essnorm->compact_flag);
    }
    if (!c.error.empty())
      CHECK_FALSE(c.criterion.has_value());
  }
  const auto summary = slurp(fs::path(cfg.out_dir) / "summary.csv");
  CHECK(summary.rfind("kind,alpha,beta,phi,g,c1_label,", 0) == 0);
  CHECK(summary.find("divergence-evidence") != std::string::npos);  // VgCphi, phi = z, alpha = 2
  CHECK(summary.find("nan") == std::string::npos);
  CHECK(summary.find("inf") == std::string::npos);

  auto cfg2 = cfg;
  cfg2.out_dir = scratch("sweep_b").string();
  run_sweep(cfg2);
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(cfg.out_dir)) {
    if (!e.is_regular_file())
      continue;
    ++files;
    const auto rel = fs::relative(e.path(), cfg.out_dir);
    CHECK(slurp(e.path()) == slurp(fs::path(cfg2.out_dir) / rel));
  }
  CHECK(files == 14);
  fs::remove_all(cfg.out_dir);
  fs::remove_all(cfg2.out_dir);
}

TEST_CASE("csv helpers") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::nan("")) == "");
  BoundaryLimsup b;
  b.eps = {0.125};
  b.sup = {0.0};
  b.empty = {true};
  CHECK(boundary_csv(b) == "eps,boundary_sup,empty\n0.125,0,true\n");
}
