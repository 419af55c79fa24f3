// Essential-norm estimates: the limsups of the scaled sequence quantities the
// boundedness conditions are built from, read two ways -- as a tail window
// over n and as a sup over the boundary set {|phi| > 1 - eps}.

#ifndef ZYGMUND_ESSNORM_HPP
#define ZYGMUND_ESSNORM_HPP

#include "zygmund/criteria.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zygmund {

// Least squares y = a + b / log n.
struct InverseLogFit {
  double a = 0.0;
  double b = 0.0;
};
InverseLogFit fit_inverse_log(std::span<const double> n, std::span<const double> y);

struct SequenceLimsup {
  SequenceResult sequence;
  std::size_t window_begin = 0;  // estimate is the max over [window_begin, N]
  double estimate = 0.0;
  double trend = 0.0;            // least-squares slope per unit n over the window
  std::optional<InverseLogFit> log_fit;  // log scaling only
};

// window = 0 picks the last quarter.  Throws when window >= n_seq.
SequenceLimsup sequence_limsup(const SymbolField& field, const SymbolWeightFn& u, const Weight& v,
                               const Scale& scale, std::size_t n_seq, std::size_t window = 0);

struct BoundaryLimsup {
  std::vector<double> eps;
  std::vector<double> sup;       // 0 where {|phi| > 1 - eps} misses the grid
  std::vector<bool> empty;
  double estimate = 0.0;         // max over the last three eps
  std::string trend;             // "increasing", "decreasing", "flat" or "empty"
};

// eps_k = 2^-k, k = 3..20.
std::vector<double> default_eps_ladder();

// Sup of v_beta |u| times the scale's pointwise factor over grid points with
// |phi(z)| > 1 - eps, for each eps of a decreasing ladder.
BoundaryLimsup boundary_limsup(const SymbolField& field, const SymbolWeightFn& u, double beta,
                               const Scale& scale, std::span<const double> eps_ladder);

// The limsups an essential norm is comparable to.  `zero_when_bounded` marks the
// cases where the operator is compact whenever bounded: the conditions
// returned are then diagnostics and the value is 0.
struct EssentialConditions {
  std::vector<ConditionSpec> specs;
  bool zero_when_bounded = false;
};
EssentialConditions essential_conditions(ProductKind kind, double alpha);

struct EssNormConfig {
  CriteriaConfig criteria;
  double window_fraction = 0.25;
  double compact_tol = 1e-3;
  std::vector<double> eps_ladder = default_eps_ladder();
};

struct EssCondition {
  std::string label;
  ConditionSpec spec;
  SequenceLimsup sequence;
  BoundaryLimsup boundary;
  double estimate = 0.0;          // the sequence route
  double two_route_ratio = 0.0;   // sequence / boundary, NaN unless both > 1e-6
};

struct EssNormEstimate {
  ProductKind kind{};
  double alpha = 0.0;
  double beta = 0.0;
  bool zero_when_bounded = false;
  std::vector<EssCondition> conditions;
  double diagnostics_max = 0.0;   // zero_when_bounded only: largest would-be estimate
  double combined = 0.0;
  bool compact_flag = false;
};

// Throws std::domain_error unless `bounded` reports a bounded verdict.
EssNormEstimate essential_norm(ProductKind kind, const SymbolField& field, double alpha,
                               double beta, const CriterionReport& bounded,
                               const EssNormConfig& config = {});
// Runs check_boundedness first.
EssNormEstimate essential_norm(ProductKind kind, const SymbolField& field, double alpha,
                               double beta, const EssNormConfig& config = {});

nlohmann::json to_json(const EssNormEstimate& e);

} // namespace zygmund

#endif
