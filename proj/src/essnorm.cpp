#include "zygmund/essnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zygmund {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

} // namespace

InverseLogFit fit_inverse_log(std::span<const double> n, std::span<const double> y) {
  if (n.size() != y.size() || n.size() < 2)
    throw std::invalid_argument("fit_inverse_log needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 1.0))
      throw std::invalid_argument("fit_inverse_log needs n > 1");
    const double x = 1.0 / std::log(n[i]);
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
  }
  const double m = static_cast<double>(n.size());
  const double det = m * sxx - sx * sx;
  if (!(std::abs(det) > 0.0))
    throw std::invalid_argument("fit_inverse_log: degenerate abscissae");
  InverseLogFit f;
  f.b = (m * sxy - sx * sy) / det;
  f.a = (sy - f.b * sx) / m;
  return f;
}

SequenceLimsup sequence_limsup(const SymbolField& field, const SymbolWeightFn& u, const Weight& v,
                               const Scale& scale, std::size_t n_seq, std::size_t window) {
  if (window == 0)
    window = std::max<std::size_t>(1, n_seq / 4);
  if (window >= n_seq)
    throw std::invalid_argument("window must be smaller than N_seq");
  SequenceLimsup r;
  r.sequence = sequence_quantity(field, u, v, scale, n_seq);
  const auto& sc = r.sequence.scaled;
  r.window_begin = n_seq - window;

  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  for (std::size_t n = r.window_begin; n <= n_seq; ++n) {
    if (std::isnan(sc[n]))
      continue;
    r.estimate = std::max(r.estimate, sc[n]);
    const double x = static_cast<double>(n);
    sx += x;
    sy += sc[n];
    sxx += x * x;
    sxy += x * sc[n];
    m += 1;
  }
  if (m >= 2)
    r.trend = (m * sxy - sx * sy) / (m * sxx - sx * sx);

  if (scale.kind == Scale::Kind::log && n_seq >= 16) {
    // 1/log n hardly moves inside the tail window; fit over log-spaced n in
    // [sqrt(N), N] instead.
    std::vector<double> ns, ys;
    const double lo = 0.5 * std::log(static_cast<double>(n_seq));
    const double hi = std::log(static_cast<double>(n_seq));
    for (int k = 0; k < 32; ++k) {
      const auto n = static_cast<std::size_t>(std::llround(std::exp(lo + (hi - lo) * k / 31.0)));
      if (n >= 2 && (ns.empty() || static_cast<double>(n) > ns.back())) {
        ns.push_back(static_cast<double>(n));
        ys.push_back(sc[n]);
      }
    }
    if (ns.size() >= 2)
      r.log_fit = fit_inverse_log(ns, ys);
  }
  return r;
}

std::vector<double> default_eps_ladder() {
  std::vector<double> e;
  for (int k = 3; k <= 20; ++k)
    e.push_back(std::ldexp(1.0, -k));
  return e;
}

BoundaryLimsup boundary_limsup(const SymbolField& field, const SymbolWeightFn& u, double beta,
                               const Scale& scale, std::span<const double> eps_ladder) {
  for (std::size_t k = 0; k < eps_ladder.size(); ++k) {
    if (!(eps_ladder[k] > 0.0 && eps_ladder[k] < 1.0) ||
        (k > 0 && !(eps_ladder[k] < eps_ladder[k - 1])))
      throw std::invalid_argument("eps ladder must decrease inside (0, 1)");
  }
  const auto& grid = field.grid();
  const auto jets = field.jets();
  const auto v = Weight::standard(beta);

  BoundaryLimsup r;
  r.eps.assign(eps_ladder.begin(), eps_ladder.end());
  r.sup.assign(eps_ladder.size(), 0.0);
  r.empty.assign(eps_ladder.size(), true);
  for (std::size_t i = 0; i < jets.size(); ++i) {
    // |phi| > 1 - eps  <=>  1 - |phi|^2 < eps (2 - eps)
    const double gap = jets[i].phi_gap;
    double value = -1.0;
    for (std::size_t k = 0; k < eps_ladder.size(); ++k) {
      const double e = eps_ladder[k];
      if (!(gap < e * (2.0 - e)))
        break;
      if (value < 0.0)
        value = v(grid.point(i)) * std::abs(u(jets[i])) * scale.pointwise_factor(gap);
      r.empty[k] = false;
      r.sup[k] = std::max(r.sup[k], value);
    }
  }
  const std::size_t m = r.sup.size();
  const std::size_t first = m >= 3 ? m - 3 : 0;
  bool all_empty = true;
  for (std::size_t k = first; k < m; ++k) {
    r.estimate = std::max(r.estimate, r.sup[k]);
    all_empty = all_empty && r.empty[k];
  }
  if (m == 0 || all_empty) {
    r.trend = "empty";
  } else {
    const double a = r.sup[first], b = r.sup[m - 1];
    const double tol = 1e-3 * std::max(a, b);
    r.trend = b > a + tol ? "increasing" : (b < a - tol ? "decreasing" : "flat");
  }
  return r;
}

EssentialConditions essential_conditions(ProductKind kind, double a) {
  if (!(a > 0.0))
    throw std::invalid_argument("alpha must be positive");
  auto near = [](double x, double y) { return std::abs(x - y) < 1e-12; };
  using S = Scale;
  switch (kind) {
  case ProductKind::VgCphi:
  case ProductKind::CphiVg:
    if (near(a, 1.0))
      return {{{1, S::power(1.0)}, {2, S::log()}}, false};
    if (a < 1.0)
      return {{{1, S::power(a)}}, false};
    return {{{1, S::power(a)}, {2, S::power(a - 1.0)}}, false};
  case ProductKind::CphiUg:
  case ProductKind::UgCphi:
    if (near(a, 1.0))
      return {{{1, S::log()}}, false};
    if (near(a, 2.0))
      return {{{1, S::power(1.0)}, {2, S::log()}}, false};
    if (a < 1.0)  // compact whenever bounded; the unscaled tails are the diagnostics
      return {{{1, S::power(0.0)}, {2, S::power(0.0)}}, true};
    if (a < 2.0)
      return {{{1, S::power(a - 1.0)}}, false};
    return {{{1, S::power(a - 1.0)}, {2, S::power(a - 2.0)}}, false};
  }
  throw std::logic_error("unhandled operator kind");
}

EssNormEstimate essential_norm(ProductKind kind, const SymbolField& field, double alpha,
                               double beta, const CriterionReport& bounded,
                               const EssNormConfig& config) {
  if (!bounded.bounded || bounded.kind != kind || bounded.alpha != alpha || bounded.beta != beta)
    throw std::domain_error("essential norm needs a bounded operator; boundedness is not established for " +
                            kind_name(kind));
  EssNormEstimate e;
  e.kind = kind;
  e.alpha = alpha;
  e.beta = beta;
  const auto ec = essential_conditions(kind, alpha);
  e.zero_when_bounded = ec.zero_when_bounded;
  const std::size_t n_seq = config.criteria.n_seq;
  const auto window = static_cast<std::size_t>(std::ceil(config.window_fraction * static_cast<double>(n_seq)));
  const auto v = Weight::standard(beta);

  double best = 0.0;
  for (const auto& spec : ec.specs) {
    EssCondition c;
    c.spec = spec;
    c.label = symbol_weight_name(kind, spec.which) + " " + spec.scale.label();
    const auto u = symbol_weight(kind, spec.which);
    c.sequence = sequence_limsup(field, u, v, spec.scale, n_seq, std::clamp<std::size_t>(window, 1, n_seq - 1));
    c.boundary = boundary_limsup(field, u, beta, spec.scale, config.eps_ladder);
    c.estimate = c.sequence.estimate;
    c.two_route_ratio = c.estimate > 1e-6 && c.boundary.estimate > 1e-6
                            ? c.estimate / c.boundary.estimate
                            : kNaN;
    best = std::max(best, c.estimate);
    e.conditions.push_back(std::move(c));
  }
  if (e.zero_when_bounded) {
    e.diagnostics_max = best;
    e.combined = 0.0;
  } else {
    e.combined = best;
  }
  e.compact_flag = e.combined < config.compact_tol;
  return e;
}

EssNormEstimate essential_norm(ProductKind kind, const SymbolField& field, double alpha,
                               double beta, const EssNormConfig& config) {
  const auto report = check_boundedness(kind, field, alpha, beta, config.criteria);
  return essential_norm(kind, field, alpha, beta, report, config);
}

nlohmann::json to_json(const EssNormEstimate& e) {
  nlohmann::json j;
  j["kind"] = kind_name(e.kind);
  j["alpha"] = e.alpha;
  j["beta"] = e.beta;
  j["zero_when_bounded"] = e.zero_when_bounded;
  j["conditions"] = nlohmann::json::array();
  for (const auto& c : e.conditions) {
    nlohmann::json q;
    q["label"] = c.label;
    q["u"] = c.spec.which;
    q["scale"] = c.spec.scale.label();
    q["sequence_limsup"] = c.sequence.estimate;
    q["window"] = {c.sequence.window_begin, c.sequence.sequence.s.size() - 1};
    q["trend"] = c.sequence.trend;
    if (c.sequence.log_fit)
      q["log_fit"] = {{"a", c.sequence.log_fit->a}, {"b", c.sequence.log_fit->b}};
    q["boundary_limsup"] = c.boundary.estimate;
    q["boundary_trend"] = c.boundary.trend;
    q["two_route_ratio"] = number_or_null(c.two_route_ratio);
    q["estimate"] = c.estimate;
    j["conditions"].push_back(q);
  }
  if (e.zero_when_bounded)
    j["diagnostics_max"] = e.diagnostics_max;
  j["combined"] = e.combined;
  j["compact_flag"] = e.compact_flag;
  return j;
}

} // namespace zygmund
