// zygmund: command-line front end.  Exit codes: 0 ok, 1 a checked invariant
// failed, 2 bad configuration or arguments.

#include "zygmund/experiment.hpp"
#include "zygmund/json_io.hpp"
#include "zygmund/testfns.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace zygmund;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Globals {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t nseq = 0, nwork = 0;
  int grid_angles = 0, jmax = 0;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ExperimentConfig resolve(const Globals& g) {
  auto c = g.config.empty() ? ExperimentConfig::standard() : load_config(g.config);
  if (!g.out.empty()) c.out_dir = g.out;
  if (g.seed_set) c.seed = g.seed;
  if (g.nseq) c.n_seq = g.nseq;
  if (g.nwork) c.n_work = g.nwork;
  if (g.grid_angles) c.grid.angles = g.grid_angles;
  if (g.jmax) c.grid.j_max = g.jmax;
  c.validate();
  return c;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_monomials(const ExperimentConfig& cfg, const std::vector<double>& alphas,
                   const std::vector<std::size_t>& checkpoints) {
  const auto r = run_monomial_study(alphas, checkpoints);
  write_text(fs::path(cfg.out_dir) / "monomial_power.csv", power_csv(r));
  write_text(fs::path(cfg.out_dir) / "monomial_log.csv", log_csv(r));
  json j;
  j["power"] = json::array();
  for (const auto& p : r.power)
    j["power"].push_back({{"alpha", p.alpha}, {"n", p.n}, {"scaled", p.scaled}, {"target", p.target},
                          {"rel_error", p.rel_error}});
  j["log"] = json::array();
  for (const auto& p : r.log)
    j["log"].push_back({{"n", p.n}, {"scaled", p.scaled}});
  j["log_fit"] = {{"a", r.fit.a}, {"b", r.fit.b}, {"n_from", r.fit_lo}, {"n_to", r.fit_hi}};
  emit(j);
  return 0;
}

int cmd_testfns(const ExperimentConfig& cfg, const std::vector<std::string>& families,
                const std::vector<double>& as, const std::vector<double>& alphas) {
  const DiskGrid grid(cfg.grid);
  std::vector<FamilyKind> kinds;
  if (families.empty())
    kinds.assign(std::begin(kAllFamilies), std::end(kAllFamilies));
  for (const auto& f : families)
    kinds.push_back(parse_family(f));
  std::vector<complex> a_grid(as.begin(), as.end());
  json out = json::array();
  for (auto k : kinds) {
    std::vector<complex> usable;
    for (auto a : a_grid)
      if (!requires_large_a(k) || (std::abs(a) > 0.5 && std::abs(a) < 1.0))
        usable.push_back(a);
    out.push_back({{"family", family_name(k)},
                   {"report", to_json(verify_family_claims(k, usable, alphas, grid))}});
  }
  write_text(fs::path(cfg.out_dir) / "testfns.json", out.dump(2) + "\n");
  emit(out);
  return 0;  // mismatches are findings, not failures
}

int cmd_identities(const ExperimentConfig& cfg, int count) {
  if (count < 1)
    throw ConfigError("--count must be at least 1");
  const DiskGrid grid(cfg.grid);
  const auto rep = run_identity_suite(cfg.seed, count, grid);
  emit(to_json(rep));
  return rep.all_pass() ? 0 : 1;
}

std::pair<SelfMapSymbol, std::string> first_symbol(const ExperimentConfig& cfg, const DiskGrid& grid) {
  try {
    auto sym = symbol_from_json(cfg.phis.front(), cfg.gs.front(), grid, cfg.n_work);
    return {std::move(sym), family_label(cfg.phis.front()) + " / " + family_label(cfg.gs.front())};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("symbols: ") + e.what());
  }
}

int cmd_criterion(const ExperimentConfig& cfg, const std::string& op, double alpha, double beta) {
  const DiskGrid grid(cfg.grid);
  const auto kind = parse_kind(op);
  auto [sym, label] = first_symbol(cfg, grid);
  const SymbolField field(sym, grid);
  CriteriaConfig cc;
  cc.n_seq = cfg.n_seq;
  const auto rep = check_boundedness(kind, field, alpha, beta, cc);
  auto j = to_json(rep);
  j["symbols"] = label;
  const fs::path out(cfg.out_dir);
  write_text(out / "criterion.json", j.dump(2) + "\n");
  for (std::size_t i = 0; i < rep.quantities.size(); ++i)
    if (rep.quantities[i].sequence)
      write_text(out / ("criterion_c" + std::to_string(i + 1) + ".csv"),
                 sequence_csv(*rep.quantities[i].sequence));
  emit(j);
  return 0;
}

int cmd_essnorm(const ExperimentConfig& cfg, const std::string& op, double alpha, double beta) {
  const DiskGrid grid(cfg.grid);
  const auto kind = parse_kind(op);
  auto [sym, label] = first_symbol(cfg, grid);
  const SymbolField field(sym, grid);
  EssNormConfig ec;
  ec.criteria.n_seq = cfg.n_seq;
  const auto rep = check_boundedness(kind, field, alpha, beta, ec.criteria);
  if (!rep.bounded) {
    std::cerr << "essnorm: boundedness is not established (verdict " << rep.verdict()
              << "); refusing to estimate\n";
    emit(to_json(rep));
    return 1;
  }
  const auto e = essential_norm(kind, field, alpha, beta, rep, ec);
  auto j = to_json(e);
  j["symbols"] = label;
  const fs::path out(cfg.out_dir);
  write_text(out / "essnorm.json", j.dump(2) + "\n");
  for (std::size_t i = 0; i < e.conditions.size(); ++i) {
    const auto tag = "essnorm_c" + std::to_string(i + 1);
    write_text(out / (tag + ".csv"), sequence_csv(e.conditions[i].sequence.sequence));
    write_text(out / (tag + "_boundary.csv"), boundary_csv(e.conditions[i].boundary));
  }
  emit(j);
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  const auto r = run_sweep(cfg);
  std::cerr << "sweep: " << r.cells.size() << " cells, " << r.errors << " with errors, written to "
            << cfg.out_dir << '\n';
  return 0;
}

int cmd_norms(const Globals& g, const ExperimentConfig& cfg, const std::vector<double>& alphas,
              const std::vector<std::size_t>& ns) {
  json j;
  j["monomials"] = json::array();
  for (auto n : ns) {
    json row{{"n", n}, {"v_log", monomial_norm(n, Weight::logarithmic())}};
    for (double a : alphas)
      row[Weight::standard(a).label()] = monomial_norm(n, Weight::standard(a));
    j["monomials"].push_back(row);
  }
  if (!g.config.empty()) {
    const auto raw = read_json(g.config);
    if (raw.contains("f")) {
      TruncatedSeries f;
      try {
        f = series_from_json(raw["f"]);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("'f': ") + e.what());
      }
      const DiskGrid grid(cfg.grid);
      j["f"] = json::array();
      for (double a : alphas)
        j["f"].push_back({{"alpha", a},
                          {"bloch", bloch_norm(f, a, grid)},
                          {"zygmund", zygmund_norm(f, a, grid)}});
    }
  }
  emit(j);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical companion for products of composition and Volterra-type operators "
               "between Zygmund-type spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "JSON config (symbols, exponents, grid)");
  app.add_option("--out", g.out, "output directory");
  app.add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t s) { g.seed = s, g.seed_set = true; }, "random seed");
  app.add_option("--nseq", g.nseq, "number of sequence terms")->check(CLI::PositiveNumber);
  app.add_option("--nwork", g.nwork, "working series degree")->check(CLI::PositiveNumber);
  app.add_option("--grid-angles", g.grid_angles, "angles per ring")->check(CLI::PositiveNumber);
  app.add_option("--jmax", g.jmax, "deepest boundary rung, 1 - r = 2^-jmax")->check(CLI::PositiveNumber);

  auto* lemma = app.add_subcommand("lemma25", "monomial norm asymptotics");
  std::vector<double> l_alphas{0.5, 1.0, 2.0};
  auto checkpoints = default_checkpoints();
  lemma->add_option("--alpha", l_alphas, "exponents");
  lemma->add_option("--checkpoints", checkpoints, "n values, at most 1e7");

  auto* testfns = app.add_subcommand("verify-testfns", "check the claims made for the test functions");
  std::vector<std::string> families;
  std::vector<double> t_as{0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  std::vector<double> t_alphas{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  testfns->add_option("--family", families, "families (default: all)");
  testfns->add_option("--a", t_as, "real parameter values");
  testfns->add_option("--alpha", t_alphas, "exponents");

  auto* ident = app.add_subcommand("identities", "seeded operator identity suite");
  int count = 100;
  ident->add_option("--count", count, "random cases");

  std::string op;
  double alpha = 1.0, beta = 1.0;
  auto* crit = app.add_subcommand("criterion", "boundedness conditions for one operator");
  auto* ess = app.add_subcommand("essnorm", "essential norm estimate for one operator");
  for (auto* sub : {crit, ess}) {
    sub->add_option("--op", op, "CphiUg, CphiVg, UgCphi or VgCphi")->required();
    sub->add_option("--alpha", alpha, "source exponent")->check(CLI::PositiveNumber);
    sub->add_option("--beta", beta, "target exponent")->check(CLI::PositiveNumber);
  }

  auto* sweep = app.add_subcommand("sweep", "criterion and essnorm over a config grid");

  auto* norms = app.add_subcommand("norms", "monomial norms, and norms of a series 'f' from --config");
  std::vector<double> n_alphas{0.5, 1.0, 2.0};
  std::vector<std::size_t> ns{1, 10, 100, 1000};
  norms->add_option("--alpha", n_alphas, "exponents");
  norms->add_option("--n", ns, "monomial degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*norms) {
      // a config holding only 'f' is fine here
      auto cfg = ExperimentConfig::standard();
      if (!g.out.empty()) cfg.out_dir = g.out;
      return cmd_norms(g, cfg, n_alphas, ns);
    }
    const auto cfg = resolve(g);
    if (*lemma) return cmd_monomials(cfg, l_alphas, checkpoints);
    if (*testfns) return cmd_testfns(cfg, families, t_as, t_alphas);
    if (*ident) return cmd_identities(cfg, count);
    if (*crit) return cmd_criterion(cfg, op, alpha, beta);
    if (*ess) return cmd_essnorm(cfg, op, alpha, beta);
    if (*sweep) return cmd_sweep(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
