#include "zygmund/experiment.hpp"

#include "zygmund/parallel.hpp"
#include "zygmund/random_poly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

namespace zygmund {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<double> number_list(const json& j, const char* key) {
  if (!j.is_array())
    throw ConfigError(std::string("'") + key + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number())
      throw ConfigError(std::string("'") + key + "' must be a list of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<json> family_list(const json& j, const char* key) {
  if (j.is_object())
    return {j};
  if (!j.is_array())
    throw ConfigError(std::string("'") + key + "' must be a family object or a list of them");
  for (const auto& x : j)
    if (!x.is_object())
      throw ConfigError(std::string("'") + key + "' entries must be objects");
  return {j.begin(), j.end()};
}

template <class T>
T positive_integer(const json& j, const char* key) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw ConfigError(std::string("'") + key + "' must be a positive integer");
  return static_cast<T>(j.get<long long>());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"')
      q += '"';
    q += c;
  }
  return q + "\"";
}

double max_coeff_distance(const TruncatedSeries& a, const TruncatedSeries& b) {
  double d = 0.0;
  for (std::size_t k = 0; k <= std::max(a.degree(), b.degree()); ++k)
    d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

void record(IdentityCheck& c, double err) {
  ++c.trials;
  c.max_error = std::max(c.max_error, err);
  if (!(err <= c.tolerance))
    ++c.failures;
}

} // namespace

std::string format_double(double x) {
  if (std::isnan(x))
    return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// ---- config

ExperimentConfig ExperimentConfig::standard() {
  ExperimentConfig c;
  c.kinds.assign(kAllKinds.begin(), kAllKinds.end());
  c.phis = {json{{"family", "scaled_identity"}, {"scale", 1.0}},
            json{{"family", "scaled_identity"}, {"scale", 0.5}},
            json{{"family", "mobius"}, {"a", 0.5}},
            json{{"family", "poly"}, {"coeffs", {0.0, 0.0, 1.0}}}};
  c.gs = {json{{"family", "identity"}},
          json{{"family", "poly"}, {"coeffs", {0.0, 0.0, 1.0}}},
          json{{"family", "log_cesaro"}}};
  c.alphas = c.betas = {0.5, 1.0, 1.5, 2.0, 2.5};
  return c;
}

void ExperimentConfig::validate() const {
  if (kinds.empty()) throw ConfigError("no operator kinds");
  if (phis.empty()) throw ConfigError("no phi families");
  if (gs.empty()) throw ConfigError("no g families");
  if (alphas.empty()) throw ConfigError("empty alpha list");
  if (betas.empty()) throw ConfigError("empty beta list");
  for (double a : alphas)
    if (!(a > 0.0 && std::isfinite(a))) throw ConfigError("alpha values must be positive");
  for (double b : betas)
    if (!(b > 0.0 && std::isfinite(b))) throw ConfigError("beta values must be positive");
  if (n_seq < 2) throw ConfigError("nseq must be at least 2");
  if (n_work < 1) throw ConfigError("nwork must be positive");
  if (grid.radii_count < 1 || grid.angles < 8 || grid.j_max < 1 || grid.refine_depth < 0)
    throw ConfigError("bad grid parameters");
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object())
    throw ConfigError("config must be a JSON object");
  auto c = ExperimentConfig::standard();
  try {
    if (j.contains("kinds")) {
      c.kinds.clear();
      if (!j["kinds"].is_array())
        throw ConfigError("'kinds' must be a list");
      for (const auto& k : j["kinds"])
        c.kinds.push_back(parse_kind(k.get<std::string>()));
    }
    if (j.contains("phi")) c.phis = family_list(j["phi"], "phi");
    if (j.contains("g")) c.gs = family_list(j["g"], "g");
    if (j.contains("alpha")) c.alphas = number_list(j["alpha"], "alpha");
    if (j.contains("beta")) c.betas = number_list(j["beta"], "beta");
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      if (g.contains("radii")) c.grid.radii_count = positive_integer<int>(g["radii"], "grid.radii");
      if (g.contains("angles")) c.grid.angles = positive_integer<int>(g["angles"], "grid.angles");
      if (g.contains("jmax")) c.grid.j_max = positive_integer<int>(g["jmax"], "grid.jmax");
      if (g.contains("refine_depth")) {
        if (!g["refine_depth"].is_number_integer())
          throw ConfigError("'grid.refine_depth' must be an integer");
        c.grid.refine_depth = g["refine_depth"].get<int>();
      }
    }
    if (j.contains("nseq")) c.n_seq = positive_integer<std::size_t>(j["nseq"], "nseq");
    if (j.contains("nwork")) c.n_work = positive_integer<std::size_t>(j["nwork"], "nwork");
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
        throw ConfigError("'seed' must be a non-negative integer");
      c.seed = j["seed"].get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["kinds"] = json::array();
  for (auto k : c.kinds)
    j["kinds"].push_back(kind_name(k));
  j["phi"] = c.phis;
  j["g"] = c.gs;
  j["alpha"] = c.alphas;
  j["beta"] = c.betas;
  j["grid"] = {{"radii", c.grid.radii_count}, {"angles", c.grid.angles},
               {"jmax", c.grid.j_max}, {"refine_depth", c.grid.refine_depth}};
  j["nseq"] = c.n_seq;
  j["nwork"] = c.n_work;
  j["out"] = c.out_dir;
  j["seed"] = c.seed;
  return j;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

// ---- monomial norm asymptotics

std::vector<std::size_t> default_checkpoints() {
  std::vector<std::size_t> out;
  for (int k = 4; k <= 28; ++k)
    out.push_back(static_cast<std::size_t>(std::llround(std::pow(10.0, k / 4.0))));
  return out;
}

MonomialStudy run_monomial_study(std::span<const double> alphas, std::span<const std::size_t> checkpoints) {
  for (auto n : checkpoints)
    if (n < 2 || n > 10'000'000)
      throw std::invalid_argument("checkpoints must lie in [2, 1e7]");
  for (double a : alphas)
    if (!(a > 0.0))
      throw std::invalid_argument("alpha must be positive");
  MonomialStudy r;
  for (double a : alphas) {
    const double target = std::pow(2.0 * a / std::numbers::e, a);
    for (auto n : checkpoints) {
      PowerRow row{a, n, 0.0, target, 0.0};
      row.scaled = std::pow(static_cast<double>(n) + 1.0, a) * monomial_norm(n, Weight::standard(a));
      row.rel_error = (row.scaled - target) / target;
      r.power.push_back(row);
    }
  }
  std::vector<double> ns, ys;
  for (auto n : checkpoints) {
    const double v = std::log(static_cast<double>(n)) * monomial_norm(n, Weight::logarithmic());
    r.log.push_back({n, v});
  }
  for (const auto& row : r.log)
    if (row.n >= 100'000) {
      ns.push_back(static_cast<double>(row.n));
      ys.push_back(row.scaled);
    }
  if (ns.size() < 2) {
    ns.clear();
    ys.clear();
    for (const auto& row : r.log) {
      ns.push_back(static_cast<double>(row.n));
      ys.push_back(row.scaled);
    }
  }
  if (ns.size() >= 2) {
    r.fit = fit_inverse_log(ns, ys);
    r.fit_lo = static_cast<std::size_t>(ns.front());
    r.fit_hi = static_cast<std::size_t>(ns.back());
  }
  return r;
}

std::string power_csv(const MonomialStudy& r) {
  std::ostringstream os;
  os << "alpha,n,scaled_norm,target,rel_error\n";
  for (const auto& p : r.power)
    os << format_double(p.alpha) << ',' << p.n << ',' << format_double(p.scaled) << ','
       << format_double(p.target) << ',' << format_double(p.rel_error) << '\n';
  return os.str();
}

std::string log_csv(const MonomialStudy& r) {
  std::ostringstream os;
  os << "n,log_n_times_norm\n";
  for (const auto& p : r.log)
    os << p.n << ',' << format_double(p.scaled) << '\n';
  return os.str();
}

// ---- identity suite

bool IdentityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.failures == 0; });
}

IdentityReport run_identity_suite(std::uint64_t seed, int count, const DiskGrid& grid) {
  if (count < 1)
    throw std::invalid_argument("count must be at least 1");
  IdentityReport rep;
  rep.seed = seed;
  rep.count = count;
  IdentityCheck parts{"integration_by_parts", 0, 0, 0.0, 1e-12};
  IdentityCheck anti{"derivative_of_antiderivative", 0, 0, 0.0, 1e-12};
  IdentityCheck pointwise{"pointwise_vs_series", 0, 0, 0.0, 1e-9};
  IdentityCheck homog{"norm_homogeneity", 0, 0, 0.0, 1e-9};  // sup search stops at ~1e-11

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> deg(1, 32);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const TruncatedSeries z{0.0, 1.0};
  for (int t = 0; t < count; ++t) {
    const auto g = random_poly(rng, deg(rng));
    const auto f = random_poly(rng, deg(rng));
    {
      const SelfMapSymbol s(z, g, grid.r_max());
      const auto lhs = apply_Ug(s, f) + apply_Vg(s, f);
      const auto rhs = multiply(g, f) - TruncatedSeries::constant(g[0] * f[0]);
      record(parts, max_coeff_distance(lhs, rhs));
    }
    record(anti, max_coeff_distance(derivative(integrate_from_zero(f)), f));
    {
      const SelfMapSymbol s(random_self_map(rng, 4), random_poly(rng, 4), grid.r_max());
      const auto h = random_poly(rng, 8);
      const complex at = std::polar(0.8 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
      for (auto kind : kAllKinds) {
        const complex exact = eval_jet(apply_product(kind, s, h).series, at).d2;
        const complex d2 = product_second_derivative(kind, s, h, at);
        record(pointwise, std::abs(d2 - exact) / std::max(1.0, std::abs(exact)));
      }
    }
    {
      const auto p = random_poly(rng, 1 + deg(rng) / 2);
      const complex c(4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0);
      const double alpha = 0.5 + 2.5 * unit(rng);
      const double base = zygmund_norm(p, alpha, grid);
      const double scaled = zygmund_norm(c * p, alpha, grid);
      record(homog, std::abs(scaled - std::abs(c) * base) / std::max(1e-300, std::abs(c) * base));
    }
  }
  rep.checks = {parts, anti, pointwise, homog};
  return rep;
}

json to_json(const IdentityReport& r) {
  json j;
  j["seed"] = r.seed;
  j["count"] = r.count;
  j["checks"] = json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name},
                           {"trials", c.trials},
                           {"failures", c.failures},
                           {"max_error", c.max_error},
                           {"tolerance", c.tolerance},
                           {"status", c.failures == 0 ? "PASS" : "FAIL"}});
  j["all_pass"] = r.all_pass();
  return j;
}

// ---- sweep

json cell_json(const SweepCell& c) {
  json j;
  j["kind"] = kind_name(c.kind);
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["phi"] = c.phi_label;
  j["g"] = c.g_label;
  j["criterion"] = c.criterion ? to_json(*c.criterion) : json(nullptr);
  j["essnorm"] = c.essnorm ? to_json(*c.essnorm) : json(nullptr);
  if (!c.essnorm_note.empty())
    j["essnorm_note"] = c.essnorm_note;
  if (!c.error.empty())
    j["error"] = c.error;
  return j;
}

std::string summary_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "kind,alpha,beta,phi,g";
  for (int i = 1; i <= 2; ++i)
    os << ",c" << i << "_label,c" << i << "_sequence_side,c" << i << "_pointwise_side,c" << i << "_ratio";
  os << ",verdict,essnorm_combined,compact_flag,error\n";
  for (const auto& c : r.cells) {
    os << kind_name(c.kind) << ',' << format_double(c.alpha) << ',' << format_double(c.beta) << ','
       << csv_field(c.phi_label) << ',' << csv_field(c.g_label);
    for (std::size_t i = 0; i < 2; ++i) {
      if (c.criterion && i < c.criterion->quantities.size()) {
        const auto& q = c.criterion->quantities[i];
        os << ',' << csv_field(q.label) << ',' << (q.sequence ? format_double(q.sequence_side) : "")
           << ','
           << (q.pointwise.divergence_evidence || !std::isfinite(q.pointwise_side)
                   ? std::string("divergence-evidence")
                   : format_double(q.pointwise_side))
           << ',' << format_double(q.ratio);
      } else {
        os << ",,,,";
      }
    }
    os << ',' << (c.criterion ? c.criterion->verdict() : "") << ','
       << (c.essnorm ? format_double(c.essnorm->combined) : "") << ','
       << (c.essnorm ? (c.essnorm->compact_flag ? "true" : "false") : "") << ','
       << csv_field(c.error) << '\n';
  }
  return os.str();
}

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  const DiskGrid grid(config.grid);
  EssNormConfig ess;
  ess.criteria.n_seq = config.n_seq;

  SweepResult result;
  for (std::size_t pi = 0; pi < config.phis.size(); ++pi) {
    for (std::size_t gi = 0; gi < config.gs.size(); ++gi) {
      std::vector<SweepCell> cells;
      for (auto kind : config.kinds)
        for (double a : config.alphas)
          for (double b : config.betas) {
            SweepCell c;
            c.kind = kind;
            c.alpha = a;
            c.beta = b;
            c.phi_label = family_label(config.phis[pi]);
            c.g_label = family_label(config.gs[gi]);
            c.file = "cells/" + kind_name(kind) + "_p" + std::to_string(pi) + "_g" + std::to_string(gi) +
                     "_a" + format_double(a) + "_b" + format_double(b) + ".json";
            cells.push_back(std::move(c));
          }

      std::unique_ptr<SelfMapSymbol> sym;
      std::unique_ptr<SymbolField> field;
      try {
        sym = std::make_unique<SelfMapSymbol>(
            symbol_from_json(config.phis[pi], config.gs[gi], grid, config.n_work));
        field = std::make_unique<SymbolField>(*sym, grid);
      } catch (const std::exception& e) {
        for (auto& c : cells)
          c.error = std::string("symbol: ") + e.what();
      }
      if (field) {
        parallel_for(cells.size(), [&](std::size_t i) {
          auto& c = cells[i];
          try {
            c.criterion = check_boundedness(c.kind, *field, c.alpha, c.beta, ess.criteria);
            if (c.criterion->bounded)
              c.essnorm = essential_norm(c.kind, *field, c.alpha, c.beta, *c.criterion, ess);
            else
              c.essnorm_note = "boundedness not established";
          } catch (const std::exception& e) {
            c.error = e.what();
          }
        });
      }
      for (auto& c : cells) {
        if (!c.error.empty())
          ++result.errors;
        write_text(fs::path(config.out_dir) / c.file, cell_json(c).dump(2) + "\n");
        result.cells.push_back(std::move(c));
      }
    }
  }
  write_text(fs::path(config.out_dir) / "summary.csv", summary_csv(result));
  auto echo = to_json(config);
  echo.erase("out");  // so runs into different directories stay byte-identical
  write_text(fs::path(config.out_dir) / "config.json", echo.dump(2) + "\n");
  return result;
}

std::string sequence_csv(const SequenceResult& s) {
  std::ostringstream os;
  os << "n,s_n,scaled\n";
  for (std::size_t n = 0; n < s.s.size(); ++n)
    os << n << ',' << format_double(s.s[n]) << ',' << format_double(s.scaled[n]) << '\n';
  return os.str();
}

std::string boundary_csv(const BoundaryLimsup& b) {
  std::ostringstream os;
  os << "eps,boundary_sup,empty\n";
  for (std::size_t k = 0; k < b.eps.size(); ++k)
    os << format_double(b.eps[k]) << ',' << format_double(b.sup[k]) << ','
       << (b.empty[k] ? "true" : "false") << '\n';
  return os.str();
}

} // namespace zygmund
