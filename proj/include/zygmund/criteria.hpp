// Boundedness characterizations of the four products: each condition is
// evaluated twice, as a scaled sequence sup_n c_n ||u phi^n||_{v_beta} and as
// the pointwise sup it is comparable to.

#ifndef ZYGMUND_CRITERIA_HPP
#define ZYGMUND_CRITERIA_HPP

#include "zygmund/operators.hpp"
#include "zygmund/spaces.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zygmund {

// How a condition weighs n (sequence side) and phi (pointwise side):
//   membership  sup v_beta |u|                        (no sequence side)
//   power(g)    (n+1)^g s_n     <->  v_beta |u| / (1-|phi|^2)^g
//   log         log(n) s_n      <->  v_beta |u| log(2/(1-|phi|^2)),  n >= 2
struct Scale {
  enum class Kind { membership, power, log };
  Kind kind = Kind::membership;
  double gamma = 0.0;

  static Scale membership() { return {Kind::membership, 0.0}; }
  static Scale power(double g) { return {Kind::power, g}; }
  static Scale log() { return {Kind::log, 0.0}; }

  bool has_sequence() const { return kind != Kind::membership; }
  // Factor multiplying s_n; nullopt where the scaling is not applied (log, n < 2).
  std::optional<double> sequence_factor(std::size_t n) const;
  // Factor multiplying v_beta |u| at a point with 1 - |phi|^2 = gap.
  double pointwise_factor(double gap) const;
  std::string label() const;
};

// A symbol weight u evaluated from the symbol jet at z.
using SymbolWeightFn = std::function<complex(const SymbolJet&)>;
// which = 1 or 2, see symbol_weights().
SymbolWeightFn symbol_weight(ProductKind kind, int which);
std::string symbol_weight_name(ProductKind kind, int which);

// Symbol jets and log|phi| on every grid point, computed once per symbol pair
// and shared by all exponents.
class SymbolField {
public:
  SymbolField(const SelfMapSymbol& sym, const DiskGrid& grid);

  const SelfMapSymbol& symbol() const { return *sym_; }
  const DiskGrid& grid() const { return *grid_; }
  std::span<const SymbolJet> jets() const { return jets_; }
  // log|phi(z)|, -inf where phi(z) = 0.
  std::span<const double> log_modulus() const { return log_p_; }

private:
  const SelfMapSymbol* sym_;
  const DiskGrid* grid_;
  std::vector<SymbolJet> jets_;
  std::vector<double> log_p_;
};

double log_modulus_from_gap(double gap);

struct SequenceResult {
  std::vector<double> s;        // s_n = sup_grid v |u| |phi|^n, n = 0..N
  std::vector<double> scaled;   // factor_n * s_n, NaN where the factor is undefined
  double sup_scaled = 0.0;      // includes golden-section polish at n_at_sup
  std::size_t n_at_sup = 0;
  bool sup_at_end = false;      // the sup sits at n = N: truncation is visible
};

// sup over grid points of A_i p_i^n for n = 0..n_max, via the upper envelope of
// the lines log A_i + n log p_i.  O(G log G + n_max).
std::vector<double> envelope_sup(std::span<const double> a, std::span<const double> log_p,
                                 std::size_t n_max);
// Direct O(G n_max) scan; reference for envelope_sup.
std::vector<double> brute_force_sup(std::span<const double> a, std::span<const double> log_p,
                                    std::size_t n_max);

SequenceResult sequence_quantity(const SymbolField& field, const SymbolWeightFn& u,
                                 const Weight& v, const Scale& scale, std::size_t n_seq);

struct PointwiseResult {
  SupEstimate sup;
  std::vector<double> ring_maxima;
  // Sup on the outermost ring and the last three ring maxima still growing.
  bool divergence_evidence = false;
};

struct CriteriaConfig {
  std::size_t n_seq = 4096;
  double cap = 1e12;          // anything larger counts as not finite
  double growth_tol = 1e-3;   // relative ring-to-ring growth that counts as divergence
};

PointwiseResult pointwise_quantity(const SymbolField& field, const SymbolWeightFn& u, double beta,
                                   const Scale& scale, const CriteriaConfig& config = {});

struct ConditionSpec {
  int which = 1;  // u1 or u2
  Scale scale;
};

// Conditions a bounded operator must satisfy, by kind and alpha.
std::vector<ConditionSpec> boundedness_conditions(ProductKind kind, double alpha);

struct CriterionQuantity {
  std::string label;
  ConditionSpec spec;
  std::optional<SequenceResult> sequence;  // absent for membership checks
  double sequence_side = 0.0;
  PointwiseResult pointwise;
  double pointwise_side = 0.0;
  double ratio = 0.0;  // NaN when not both finite and positive
  bool finite = true;
};

struct CriterionReport {
  ProductKind kind{};
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<CriterionQuantity> quantities;
  bool bounded = false;
  std::string verdict() const { return bounded ? "bounded" : "not-determined"; }
};

CriterionQuantity evaluate_condition(ProductKind kind, const SymbolField& field,
                                     const ConditionSpec& spec, double beta,
                                     const CriteriaConfig& config = {});

CriterionReport check_boundedness(ProductKind kind, const SymbolField& field, double alpha,
                                  double beta, const CriteriaConfig& config = {});

nlohmann::json to_json(const CriterionQuantity& q);
nlohmann::json to_json(const CriterionReport& r);

} // namespace zygmund

#endif
