#include "zygmund/testfns.hpp"

#include "zygmund/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace zygmund {

namespace {

struct NameEntry {
  FamilyKind kind;
  const char* name;
};
constexpr NameEntry kNames[] = {
    {FamilyKind::f_a, "f_a"}, {FamilyKind::h_a, "h_a"},       {FamilyKind::g_a, "g_a"},
    {FamilyKind::k_a, "k_a"}, {FamilyKind::t_a_log, "t_a_log"}, {FamilyKind::h_n, "h_n"},
    {FamilyKind::f_n, "f_n"}, {FamilyKind::g_n, "g_n"},       {FamilyKind::O_n, "O_n"},
    {FamilyKind::t_n_kernel, "t_n_kernel"}};

// (u-1)((1 + l(u))^2 + 1) with l(u) = log(c/(1-u)); its derivative is l^2
// and its second derivative 2l/(1-u).
Jet log_profile(complex u, double c) {
  const complex l = std::log(c / (1.0 - u));
  return {(u - 1.0) * ((1.0 + l) * (1.0 + l) + 1.0), l * l, 2.0 * l / (1.0 - u)};
}

// Antiderivative of log^3(2/u) in u.
complex cube_log_antiderivative(complex u) {
  const complex l = std::log(2.0 / u);
  return u * (l * l * l + 3.0 * l * l + 6.0 * l + 6.0);
}

std::string describe(complex a) {
  std::ostringstream os;
  if (a.imag() == 0.0)
    os << a.real();
  else
    os << a;
  return os.str();
}

// Norm exponent used for the uniform bound of each family.
double bound_exponent(FamilyKind kind, double alpha) {
  switch (kind) {
  case FamilyKind::t_a_log:
  case FamilyKind::O_n:
    return 2.0;
  case FamilyKind::h_n:
  case FamilyKind::f_n:
  case FamilyKind::g_n:
    return 1.0;
  default:
    return alpha;
  }
}

IdentityClaim make_identity(const TestFamily& fam, std::string statement, complex observed,
                            complex claimed, double tol) {
  IdentityClaim c;
  c.family = family_name(fam.kind());
  c.statement = std::move(statement);
  c.a = fam.a();
  c.alpha = fam.alpha();
  c.observed = observed;
  c.claimed = claimed;
  c.error = std::abs(observed - claimed) / std::max(1.0, std::abs(claimed));
  c.holds = std::isfinite(c.error) && c.error <= tol;
  return c;
}

} // namespace

std::string family_name(FamilyKind kind) {
  for (const auto& e : kNames)
    if (e.kind == kind)
      return e.name;
  return "?";
}

FamilyKind parse_family(std::string_view name) {
  for (const auto& e : kNames)
    if (name == e.name)
      return e.kind;
  throw std::invalid_argument("unknown test family '" + std::string(name) + "'");
}

bool requires_large_a(FamilyKind kind) {
  return kind != FamilyKind::f_a && kind != FamilyKind::h_a && kind != FamilyKind::g_a;
}

bool depends_on_alpha(FamilyKind kind) {
  return kind == FamilyKind::f_a || kind == FamilyKind::h_a || kind == FamilyKind::g_a ||
         kind == FamilyKind::t_n_kernel;
}

TestFamily::TestFamily(FamilyKind kind, complex a, double alpha)
    : kind_(kind), a_(a), alpha_(alpha) {
  const double m = std::abs(a);
  if (!(m < 1.0) || m == 0.0)
    throw std::invalid_argument(family_name(kind) + " needs 0 < |a| < 1");
  if (requires_large_a(kind) && !(m > 0.5))
    throw std::invalid_argument(family_name(kind) + " needs 1/2 < |a| < 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("test families need alpha > 0");
}

Jet TestFamily::jet(complex z) const {
  const complex ab = std::conj(a_);
  const double c1 = 1.0 - std::norm(a_);
  const double c2 = c1 * c1;
  const double al = alpha_;
  const complex E = 1.0 - ab * z;
  const complex logE = std::log(E);
  const auto Epow = [&](double p) { return std::exp(p * logE); };

  const auto f_a = [&]() -> Jet {
    return {(c2 * Epow(-al) - c1 * Epow(1.0 - al)) / ab,
            c2 * al * Epow(-al - 1.0) - c1 * (al - 1.0) * Epow(-al),
            c2 * al * (al + 1.0) * ab * Epow(-al - 2.0) - c1 * al * (al - 1.0) * ab * Epow(-al - 1.0)};
  };
  const auto h_a = [&]() -> Jet {
    const complex value = al == 1.0 ? -(c1 / ab) * logE / ab
                                    : (c1 / ab) * (1.0 - Epow(1.0 - al)) / (ab * (1.0 - al));
    return {value, (c1 / ab) * Epow(-al), c1 * al * Epow(-al - 1.0)};
  };

  switch (kind_) {
  case FamilyKind::f_a:
    return f_a();
  case FamilyKind::h_a:
    return h_a();
  case FamilyKind::g_a: {
    const Jet f = f_a(), h = h_a();
    return {f.value - h.value, f.d1 - h.d1, f.d2 - h.d2};
  }
  case FamilyKind::k_a: {
    const double lk = std::log(1.0 / (1.0 - std::abs(a_)));
    const Jet p = log_profile(ab * z, 1.0);
    return {p.value / (ab * lk), p.d1 / lk, ab * p.d2 / lk};
  }
  case FamilyKind::t_a_log:
    return {std::log(2.0 / E), ab / E, ab * ab / (E * E)};
  case FamilyKind::h_n: {
    const double L = std::log(2.0 / c1);
    const Jet h = log_profile(ab * z, 2.0);
    const complex l = std::log(2.0 / E);
    const complex integral =
        -(cube_log_antiderivative(E) - cube_log_antiderivative(1.0)) / ab;
    return {h.value / (ab * L) - integral / (L * L), h.d1 / L - l * l * l / (L * L),
            ab / E * (2.0 * l / L - 3.0 * l * l / (L * L))};
  }
  case FamilyKind::f_n: {
    const double L = std::log(2.0 / c1);
    const Jet h = log_profile(ab * z, 2.0);
    return {h.value / (a_ * L), ab * h.d1 / (a_ * L), ab * ab * h.d2 / (a_ * L)};
  }
  case FamilyKind::g_n: {
    const double lam = std::log(1.0 / c1);
    const Jet p = log_profile(ab * z, 1.0);
    const complex a_n = (std::norm(a_) - 1.0) / a_ * ((1.0 + lam) * (1.0 + lam) + 1.0) / lam;
    return {p.value / (a_ * lam) - a_n, ab * p.d1 / (a_ * lam), ab * ab * p.d2 / (a_ * lam)};
  }
  case FamilyKind::O_n: {
    const double L = std::log(2.0 / c1);
    const complex l = std::log(2.0 / E);
    return {(1.0 + l * l) / L, 2.0 * l * ab / (E * L), 2.0 * ab * ab * (1.0 + l) / (E * E * L)};
  }
  case FamilyKind::t_n_kernel:
    return {c2 * Epow(-al), c2 * al * ab * Epow(-al - 1.0),
            c2 * al * (al + 1.0) * ab * ab * Epow(-al - 2.0)};
  }
  throw std::logic_error("unhandled family");
}

complex TestFamily::eval(complex z, int order) const {
  const auto j = jet(z);
  switch (order) {
  case 0: return j.value;
  case 1: return j.d1;
  case 2: return j.d2;
  default: throw std::invalid_argument("derivative order must be 0, 1 or 2");
  }
}

double family_zygmund_norm(const TestFamily& fam, double exponent, const DiskGrid& grid) {
  const auto j0 = fam.jet(0.0);
  return zygmund_norm(j0.value, j0.d1, [&](complex z) { return fam.jet(z).d2; }, exponent, grid);
}

SeriesFit fit_series(const TestFamily& fam, std::size_t degree) {
  // F is analytic on |z| < 1/|a|, so DFT coefficients on |z| = 1 alias only
  // at order |a|^M.
  std::size_t m_count = 64;
  while (m_count < 2 * (degree + 1))
    m_count *= 2;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m_count);
  std::vector<complex> samples(m_count);
  for (std::size_t m = 0; m < m_count; ++m)
    samples[m] = fam.eval(std::polar(1.0, step * static_cast<double>(m)));
  std::vector<complex> c(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) {
    complex acc{};
    for (std::size_t m = 0; m < m_count; ++m)
      acc += samples[m] * std::polar(1.0, -step * static_cast<double>((m * k) % m_count));
    c[k] = acc / static_cast<double>(m_count);
  }
  SeriesFit fit{TruncatedSeries(std::move(c)), 0.0};
  for (std::size_t m = 0; m < m_count; m += std::max<std::size_t>(1, m_count / 256)) {
    const complex z = std::polar(1.0, step * (static_cast<double>(m) + 0.5));
    fit.residual = std::max(fit.residual, std::abs(fam.eval(z) - zygmund::eval(fit.series, z)));
  }
  return fit;
}

bool ClaimReport::all_hold() const {
  return std::all_of(identities.begin(), identities.end(), [](const auto& c) { return c.holds; }) &&
         std::all_of(norm_bounds.begin(), norm_bounds.end(), [](const auto& c) { return c.holds; });
}

ClaimReport verify_family_claims(FamilyKind kind, std::span<const complex> a_grid,
                                 std::span<const double> alpha_grid, const DiskGrid& grid,
                                 const ClaimOptions& options) {
  ClaimReport report;
  std::vector<double> alphas(alpha_grid.begin(), alpha_grid.end());
  if (!depends_on_alpha(kind) && kind != FamilyKind::k_a)
    alphas = {1.0};
  if (kind == FamilyKind::t_n_kernel)
    std::erase_if(alphas, [](double a) { return a <= 2.0; });  // used only for alpha > 2
  const double tol = options.tolerance;

  for (const double alpha : alphas) {
    for (const complex a : a_grid) {
      if (requires_large_a(kind) && !(std::abs(a) > 0.5))
        continue;
      const TestFamily fam(kind, a, alpha);
      const double c1 = 1.0 - std::norm(a);
      const auto at_a = fam.jet(a);
      auto add = [&](std::string s, complex observed, complex claimed) {
        report.identities.push_back(make_identity(fam, std::move(s), observed, claimed, tol));
      };
      switch (kind) {
      case FamilyKind::h_a:
        add("h_a(0) = 0", fam.eval(0.0), 0.0);
        break;
      case FamilyKind::g_a:
        add("g_a'(a) = 0", at_a.d1, 0.0);
        add("g_a''(a) = alpha/(1-|a|^2)^alpha", at_a.d2, alpha / std::pow(c1, alpha));
        break;
      case FamilyKind::k_a:
        add("|k_a'(a)| = log(1/(1-|a|^2))", std::abs(at_a.d1), std::log(1.0 / c1));
        add("|k_a''(a)| = alpha/(1-|a|^2)^alpha", std::abs(at_a.d2), alpha / std::pow(c1, alpha));
        break;
      case FamilyKind::h_n:
        add("h_n'(b) = 0", at_a.d1, 0.0);
        add("h_n''(b) = -conj(b)/(1-|b|^2)", at_a.d2, -std::conj(a) / c1);
        break;
      case FamilyKind::f_n:
        add("|f_n'(b)| = log(2/(1-|b|^2))", std::abs(at_a.d1), std::log(2.0 / c1));
        break;
      case FamilyKind::g_n:
        add("g_n(b) = 0", at_a.value, 0.0);
        add("g_n'(b) = log(1/(1-|b|^2))", at_a.d1, std::log(1.0 / c1));
        break;
      case FamilyKind::O_n: {
        // Only the lower bound |O_n(b)| >= log(2/(1-|b|^2)) is used.
        const double L = std::log(2.0 / c1);
        IdentityClaim c = make_identity(fam, "|O_n(b)| >= log(2/(1-|b|^2))", std::abs(at_a.value), L, tol);
        c.error = std::max(0.0, L - std::abs(at_a.value)) / std::max(1.0, L);
        c.holds = c.error <= tol;
        report.identities.push_back(c);
        break;
      }
      default:
        break;
      }
    }

    const bool has_bound = kind != FamilyKind::g_a;
    if (!options.norm_bounds || !has_bound)
      continue;
    NormBoundClaim nb;
    nb.family = family_name(kind);
    nb.alpha = alpha;
    nb.exponent = bound_exponent(kind, alpha);
    std::ostringstream st;
    st << "sup over 1/2 < |a| < 1 of ||" << nb.family << "|| in Z^" << nb.exponent << " is finite";
    nb.statement = st.str();
    for (const complex a : a_grid) {
      if (!(std::abs(a) > 0.5))
        continue;  // the bound is claimed for |a| > 1/2 only
      nb.a_values.push_back(a);
      nb.norms.push_back(family_zygmund_norm(TestFamily(kind, a, alpha), nb.exponent, grid));
    }
    if (!nb.norms.empty()) {
      const auto [lo, hi] = std::minmax_element(nb.norms.begin(), nb.norms.end());
      nb.spread = *hi / *lo;
      nb.holds = std::isfinite(nb.spread) && nb.spread <= options.spread_limit;
      report.norm_bounds.push_back(std::move(nb));
    }
  }
  return report;
}

nlohmann::json to_json(const ClaimReport& report) {
  nlohmann::json out;
  out["identities"] = nlohmann::json::array();
  for (const auto& c : report.identities) {
    out["identities"].push_back({{"family", c.family},
                                 {"claim", c.statement},
                                 {"a", complex_to_json(c.a)},
                                 {"a_text", describe(c.a)},
                                 {"alpha", c.alpha},
                                 {"observed", complex_to_json(c.observed)},
                                 {"claimed", complex_to_json(c.claimed)},
                                 {"relative_error", c.error},
                                 {"status", c.holds ? "PASS" : "FAIL"}});
  }
  out["norm_bounds"] = nlohmann::json::array();
  for (const auto& c : report.norm_bounds) {
    nlohmann::json a = nlohmann::json::array();
    for (auto x : c.a_values)
      a.push_back(complex_to_json(x));
    out["norm_bounds"].push_back({{"family", c.family},
                                  {"claim", c.statement},
                                  {"alpha", c.alpha},
                                  {"exponent", c.exponent},
                                  {"a", a},
                                  {"norms", c.norms},
                                  {"spread", c.spread},
                                  {"status", c.holds ? "PASS" : "FAIL"}});
  }
  out["all_hold"] = report.all_hold();
  return out;
}

} // namespace zygmund
