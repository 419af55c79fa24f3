#include "zygmund/criteria.hpp"

#include "zygmund/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zygmund {

namespace {

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

struct Line {
  long double slope;
  long double intercept;
  long double at(long double x) const { return intercept + slope * x; }
};

// With slopes m1 < m2 < m3, the middle line never attains the max when the
// outer two cross at or before it rises above the first.
bool redundant(const Line& l1, const Line& l2, const Line& l3) {
  return (l1.intercept - l3.intercept) * (l2.slope - l1.slope) <=
         (l1.intercept - l2.intercept) * (l3.slope - l1.slope);
}

} // namespace

std::optional<double> Scale::sequence_factor(std::size_t n) const {
  switch (kind) {
  case Kind::power:
    return std::pow(static_cast<double>(n) + 1.0, gamma);
  case Kind::log:
    if (n < 2)
      return std::nullopt;
    return std::log(static_cast<double>(n));
  case Kind::membership:
    return std::nullopt;
  }
  return std::nullopt;
}

double Scale::pointwise_factor(double gap) const {
  gap = std::max(gap, std::numeric_limits<double>::min());
  switch (kind) {
  case Kind::power: return std::pow(gap, -gamma);
  case Kind::log: return std::log(2.0 / gap);
  case Kind::membership: return 1.0;
  }
  return 1.0;
}

std::string Scale::label() const {
  switch (kind) {
  case Kind::power: return "(n+1)^" + format_number(gamma);
  case Kind::log: return "log n";
  case Kind::membership: return "membership";
  }
  return "?";
}

SymbolWeightFn symbol_weight(ProductKind kind, int which) {
  if (which != 1 && which != 2)
    throw std::invalid_argument("symbol weight index must be 1 or 2");
  return [kind, which](const SymbolJet& s) {
    const auto [u1, u2] = symbol_weights(kind, s);
    return which == 1 ? u1 : u2;
  };
}

std::string symbol_weight_name(ProductKind kind, int which) {
  switch (kind) {
  case ProductKind::VgCphi: return which == 1 ? "g*phi'" : "g'";
  case ProductKind::CphiVg: return which == 1 ? "g(phi)*phi'^2" : "g'(phi)*phi'^2+g(phi)*phi''";
  case ProductKind::CphiUg: return which == 1 ? "g'(phi)*phi'^2" : "g''(phi)*phi'^2+g'(phi)*phi''";
  case ProductKind::UgCphi: return which == 1 ? "g'*phi'" : "g''";
  }
  return "?";
}

double log_modulus_from_gap(double gap) {
  if (gap >= 1.0)
    return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log1p(-std::max(gap, 0.0));
}

SymbolField::SymbolField(const SelfMapSymbol& sym, const DiskGrid& grid)
    : sym_(&sym), grid_(&grid), jets_(sample_symbol(sym, grid)), log_p_(jets_.size()) {
  for (std::size_t i = 0; i < jets_.size(); ++i)
    log_p_[i] = log_modulus_from_gap(jets_[i].phi_gap);
}

std::vector<double> envelope_sup(std::span<const double> a, std::span<const double> log_p,
                                 std::size_t n_max) {
  if (a.size() != log_p.size())
    throw std::invalid_argument("envelope_sup: size mismatch");
  std::vector<double> out(n_max + 1, 0.0);
  std::vector<Line> lines;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0))
      continue;
    out[0] = std::max(out[0], a[i]);
    if (std::isfinite(log_p[i]))
      lines.push_back({log_p[i], std::log(static_cast<long double>(a[i]))});
  }
  if (lines.empty() || n_max == 0)
    return out;

  std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
    return x.slope < y.slope || (x.slope == y.slope && x.intercept < y.intercept);
  });
  std::vector<Line> hull;
  for (const auto& l : lines) {
    if (!hull.empty() && hull.back().slope == l.slope)
      hull.pop_back();  // same slope, this one has the larger intercept
    while (hull.size() >= 2 && redundant(hull[hull.size() - 2], hull.back(), l))
      hull.pop_back();
    hull.push_back(l);
  }
  std::size_t k = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto x = static_cast<long double>(n);
    while (k + 1 < hull.size() && hull[k + 1].at(x) >= hull[k].at(x))
      ++k;
    out[n] = static_cast<double>(std::exp(hull[k].at(x)));
  }
  return out;
}

std::vector<double> brute_force_sup(std::span<const double> a, std::span<const double> log_p,
                                    std::size_t n_max) {
  std::vector<double> out(n_max + 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0))
      continue;
    out[0] = std::max(out[0], a[i]);
    for (std::size_t n = 1; n <= n_max; ++n)
      out[n] = std::max(out[n], a[i] * std::exp(static_cast<double>(n) * log_p[i]));
  }
  return out;
}

SequenceResult sequence_quantity(const SymbolField& field, const SymbolWeightFn& u,
                                 const Weight& v, const Scale& scale, std::size_t n_seq) {
  if (!scale.has_sequence())
    throw std::invalid_argument("membership checks have no sequence side");
  if (n_seq < 1)
    throw std::invalid_argument("N_seq must be at least 1");
  const auto& grid = field.grid();
  const auto jets = field.jets();
  const auto log_p = field.log_modulus();
  std::vector<double> a(jets.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = v(grid.point(i)) * std::abs(u(jets[i]));
    if (!std::isfinite(a[i]))
      throw std::runtime_error("non-finite symbol weight on the grid");
  }

  SequenceResult r;
  r.s = envelope_sup(a, log_p, n_seq);
  r.scaled.assign(n_seq + 1, std::numeric_limits<double>::quiet_NaN());
  double best = -1.0;
  for (std::size_t n = 0; n <= n_seq; ++n) {
    const auto f = scale.sequence_factor(n);
    if (!f)
      continue;
    r.scaled[n] = *f * r.s[n];
    if (r.scaled[n] > best) {
      best = r.scaled[n];
      r.n_at_sup = n;
    }
  }
  r.sup_scaled = std::max(best, 0.0);
  r.sup_at_end = r.n_at_sup == n_seq && n_seq > 0;

  if (r.sup_scaled > 0.0 && grid.params().refine_depth > 0) {
    const auto n = static_cast<double>(r.n_at_sup);
    std::vector<double> coarse(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      coarse[i] = a[i] > 0.0 ? a[i] * std::exp(n * log_p[i]) : 0.0;
    const auto& sym = field.symbol();
    const PointFunction h = [&](const DiskPoint& p) {
      const auto s = sym.jet(p);
      const double w = v(p) * std::abs(u(s));
      return w > 0.0 ? w * std::exp(n * log_modulus_from_gap(s.phi_gap)) : 0.0;
    };
    const auto refined = refine_sup(coarse, h, grid);
    if (std::isfinite(refined.value))
      r.sup_scaled = std::max(r.sup_scaled, *scale.sequence_factor(r.n_at_sup) * refined.value);
  }
  return r;
}

PointwiseResult pointwise_quantity(const SymbolField& field, const SymbolWeightFn& u, double beta,
                                   const Scale& scale, const CriteriaConfig& config) {
  const auto& grid = field.grid();
  const auto jets = field.jets();
  const auto v = Weight::standard(beta);
  std::vector<double> coarse(jets.size());
  PointwiseResult r;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    coarse[i] = v(grid.point(i)) * std::abs(u(jets[i])) * scale.pointwise_factor(jets[i].phi_gap);
    if (!std::isfinite(coarse[i])) {
      r.sup.value = std::numeric_limits<double>::infinity();
      r.sup.argmax = grid.point(i).z;
      r.divergence_evidence = true;
      return r;
    }
  }
  r.ring_maxima = ring_maxima(coarse, grid);
  const auto& sym = field.symbol();
  const PointFunction h = [&](const DiskPoint& p) {
    const auto s = sym.jet(p);
    return v(p) * std::abs(u(s)) * scale.pointwise_factor(s.phi_gap);
  };
  r.sup = refine_sup(coarse, h, grid);

  const auto& rm = r.ring_maxima;
  const std::size_t last = rm.size() - 1;
  const double top = *std::max_element(rm.begin(), rm.end());
  if (rm.size() >= 3 && rm[last] == top && rm[last] > 0.0) {
    const double g = 1.0 + config.growth_tol;
    r.divergence_evidence = rm[last] > g * rm[last - 1] && rm[last - 1] > g * rm[last - 2];
  }
  return r;
}

std::vector<ConditionSpec> boundedness_conditions(ProductKind kind, double a) {
  if (!(a > 0.0))
    throw std::invalid_argument("alpha must be positive");
  using S = Scale;
  switch (kind) {
  case ProductKind::VgCphi:
  case ProductKind::CphiVg:
    if (near(a, 1.0))
      return {{1, S::power(1.0)}, {2, S::log()}};
    if (a < 1.0)
      return {{2, S::membership()}, {1, S::power(a)}};
    return {{1, S::power(a)}, {2, S::power(a - 1.0)}};
  case ProductKind::CphiUg:
  case ProductKind::UgCphi:
    if (near(a, 1.0))
      return {{2, S::membership()}, {1, S::log()}};
    if (near(a, 2.0))
      return {{1, S::power(1.0)}, {2, S::log()}};
    if (a < 1.0)
      return {{1, S::membership()}, {2, S::membership()}};
    if (a < 2.0)
      return {{2, S::membership()}, {1, S::power(a - 1.0)}};
    return {{1, S::power(a - 1.0)}, {2, S::power(a - 2.0)}};
  }
  throw std::logic_error("unhandled operator kind");
}

CriterionQuantity evaluate_condition(ProductKind kind, const SymbolField& field,
                                     const ConditionSpec& spec, double beta,
                                     const CriteriaConfig& config) {
  CriterionQuantity q;
  q.spec = spec;
  q.label = symbol_weight_name(kind, spec.which) + " " + spec.scale.label();
  const auto u = symbol_weight(kind, spec.which);
  if (spec.scale.has_sequence()) {
    q.sequence = sequence_quantity(field, u, Weight::standard(beta), spec.scale, config.n_seq);
    q.sequence_side = q.sequence->sup_scaled;
  }
  q.pointwise = pointwise_quantity(field, u, beta, spec.scale, config);
  q.pointwise_side = q.pointwise.sup.value;
  q.finite = !q.pointwise.divergence_evidence && q.pointwise_side < config.cap &&
             q.sequence_side < config.cap;
  q.ratio = std::numeric_limits<double>::quiet_NaN();
  if (q.finite && q.sequence && q.pointwise_side > 0.0 && q.sequence_side > 0.0)
    q.ratio = q.sequence_side / q.pointwise_side;
  return q;
}

CriterionReport check_boundedness(ProductKind kind, const SymbolField& field, double alpha,
                                  double beta, const CriteriaConfig& config) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("alpha and beta must be positive");
  CriterionReport r;
  r.kind = kind;
  r.alpha = alpha;
  r.beta = beta;
  r.bounded = true;
  for (const auto& spec : boundedness_conditions(kind, alpha)) {
    r.quantities.push_back(evaluate_condition(kind, field, spec, beta, config));
    r.bounded = r.bounded && r.quantities.back().finite;
  }
  return r;
}

nlohmann::json to_json(const CriterionQuantity& q) {
  nlohmann::json j;
  j["label"] = q.label;
  j["u"] = q.spec.which;
  j["scale"] = q.spec.scale.label();
  if (q.sequence) {
    j["sequence_side"] = q.sequence_side;
    j["n_at_sup"] = q.sequence->n_at_sup;
    j["sup_at_end"] = q.sequence->sup_at_end;
  } else {
    j["sequence_side"] = nullptr;
  }
  if (q.pointwise.divergence_evidence || !std::isfinite(q.pointwise_side))
    j["pointwise_side"] = "divergence-evidence";
  else
    j["pointwise_side"] = q.pointwise_side;
  j["pointwise_argmax"] = complex_to_json(q.pointwise.sup.argmax);
  j["ratio"] = std::isfinite(q.ratio) ? nlohmann::json(q.ratio) : nlohmann::json(nullptr);
  j["finite"] = q.finite;
  return j;
}

nlohmann::json to_json(const CriterionReport& r) {
  nlohmann::json j;
  j["kind"] = kind_name(r.kind);
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["conditions"] = nlohmann::json::array();
  for (const auto& q : r.quantities)
    j["conditions"].push_back(to_json(q));
  j["verdict"] = r.verdict();
  return j;
}

} // namespace zygmund
