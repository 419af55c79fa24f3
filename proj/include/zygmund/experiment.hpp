// Experiment plumbing behind the command-line tool: configs, the monomial
// convergence study, the seeded identity suite and the criterion/essnorm sweep.

#ifndef ZYGMUND_EXPERIMENT_HPP
#define ZYGMUND_EXPERIMENT_HPP

#include "zygmund/criteria.hpp"
#include "zygmund/essnorm.hpp"
#include "zygmund/operators.hpp"
#include "zygmund/spaces.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zygmund {

// Bad configuration: the tool exits with code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::vector<ProductKind> kinds;
  std::vector<nlohmann::json> phis;
  std::vector<nlohmann::json> gs;
  std::vector<double> alphas;
  std::vector<double> betas;
  GridParams grid;
  std::size_t n_seq = 4096;
  std::size_t n_work = kDefaultWorkDegree;
  std::string out_dir = "out";
  std::uint64_t seed = 20240601;

  // 4 kinds x {z, z/2, mobius(0.5), z^2} x {z, z^2, log(1/(1-z))} x
  // alpha, beta in {0.5, 1, 1.5, 2, 2.5}.
  static ExperimentConfig standard();
  void validate() const;  // throws ConfigError
};

// Keys: kinds, phi, g, alpha, beta, grid {radii, angles, jmax, refine_depth},
// nseq, nwork, out, seed.  Missing keys keep the standard values; present
// but empty lists are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::filesystem::path& path);

// ---- monomial norm asymptotics

struct PowerRow {
  double alpha = 0.0;
  std::size_t n = 0;
  double scaled = 0.0;   // (n+1)^alpha ||z^n||_{v_alpha}
  double target = 0.0;   // (2 alpha / e)^alpha
  double rel_error = 0.0;
};
struct LogRow {
  std::size_t n = 0;
  double scaled = 0.0;   // log(n) ||z^n||_{v_log}
};
struct MonomialStudy {
  std::vector<PowerRow> power;
  std::vector<LogRow> log;
  InverseLogFit fit;                  // a + b / log n over the fit window
  std::size_t fit_lo = 0, fit_hi = 0;
};

// 10, 10^1.25, ..., 10^7 rounded.
std::vector<std::size_t> default_checkpoints();
// Checkpoints must lie in [2, 10^7].  The log fit uses checkpoints >= 10^5,
// or all of them when fewer than two reach that far.
MonomialStudy run_monomial_study(std::span<const double> alphas, std::span<const std::size_t> checkpoints);
std::string power_csv(const MonomialStudy& r);
std::string log_csv(const MonomialStudy& r);

// ---- seeded identity suite

struct IdentityCheck {
  std::string name;
  int trials = 0;
  int failures = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
};
struct IdentityReport {
  std::uint64_t seed = 0;
  int count = 0;
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};
// Throws std::invalid_argument for count < 1.
IdentityReport run_identity_suite(std::uint64_t seed, int count, const DiskGrid& grid);
nlohmann::json to_json(const IdentityReport& r);

// ---- sweep

struct SweepCell {
  ProductKind kind{};
  double alpha = 0.0, beta = 0.0;
  std::string phi_label, g_label;
  std::string file;              // relative to the output directory
  std::optional<CriterionReport> criterion;
  std::optional<EssNormEstimate> essnorm;
  std::string essnorm_note;      // why there is no estimate
  std::string error;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::size_t errors = 0;
};

// Runs every cell, writes one JSON per cell under out/cells and out/summary.csv.
// Per-cell failures are recorded and the run goes on.
SweepResult run_sweep(const ExperimentConfig& config);
std::string summary_csv(const SweepResult& r);
nlohmann::json cell_json(const SweepCell& c);

// CSV helpers shared with the tool.
std::string format_double(double x);
std::string sequence_csv(const SequenceResult& s);
std::string boundary_csv(const BoundaryLimsup& b);
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace zygmund

#endif
