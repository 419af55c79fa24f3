#include "zygmund/operators.hpp"

#include "zygmund/json_io.hpp"
#include "zygmund/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace zygmund {

namespace {

constexpr double kSelfMapSlack = 1e-9;
constexpr int kCircleSamples = 4096;

double circle_sup(const TruncatedSeries& phi, double r) {
  const double step = 2.0 * std::numbers::pi / kCircleSamples;
  const auto h = [&](double t) { return std::abs(eval(phi, std::polar(r, t))); };
  std::vector<double> v(kCircleSamples);
  for (int m = 0; m < kCircleSamples; ++m)
    v[static_cast<std::size_t>(m)] = h(m * step);
  std::vector<int> order(kCircleSamples);
  for (int m = 0; m < kCircleSamples; ++m)
    order[static_cast<std::size_t>(m)] = m;
  std::partial_sort(order.begin(), order.begin() + 4, order.end(),
                    [&](int a, int b) { return v[static_cast<std::size_t>(a)] > v[static_cast<std::size_t>(b)]; });
  double best = v[static_cast<std::size_t>(order[0])];
  for (int k = 0; k < 4; ++k) {
    const double t = order[static_cast<std::size_t>(k)] * step;
    best = std::max(best, golden_section_max(h, t - step, t + step).value);
  }
  return best;
}

Truncated integrate_bounded(Truncated t) {
  // sup |int_0^z e| <= sup |e| on the closed disk.
  return {integrate_from_zero(t.series), t.tail_bound};
}

Truncated ug_bounded(const SelfMapSymbol& sym, const TruncatedSeries& f, std::size_t n_work) {
  return integrate_bounded(multiply_bounded(f, sym.dg(), n_work - 1));
}

Truncated vg_bounded(const SelfMapSymbol& sym, const TruncatedSeries& f, std::size_t n_work) {
  return integrate_bounded(multiply_bounded(derivative(f), sym.g(), n_work - 1));
}

Truncated then_compose(const Truncated& inner, const TruncatedSeries& phi, std::size_t n_work) {
  // |phi| <= 1, so an error e in the outer function stays below sup |e|.
  auto c = compose_bounded(inner.series, phi, n_work);
  c.tail_bound += inner.tail_bound;
  return c;
}

TruncatedSeries exact_product(const TruncatedSeries& a, const TruncatedSeries& b) {
  return multiply(a, b, a.degree() + b.degree());
}

std::string lower_alnum(std::string_view s) {
  std::string out;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string format_complex(complex z) {
  if (z.imag() == 0.0)
    return format_number(z.real());
  std::ostringstream os;
  os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  return os.str();
}

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("symbol spec is missing \"") + key + "\": " + j.dump());
  return j.at(key);
}

} // namespace

ProductKind parse_kind(std::string_view name) {
  const auto key = lower_alnum(name);
  if (key == "cphiug")
    return ProductKind::CphiUg;
  if (key == "cphivg")
    return ProductKind::CphiVg;
  if (key == "ugcphi")
    return ProductKind::UgCphi;
  if (key == "vgcphi")
    return ProductKind::VgCphi;
  throw std::invalid_argument("unknown operator kind '" + std::string(name) + "'");
}

std::string kind_name(ProductKind kind) {
  switch (kind) {
  case ProductKind::CphiUg: return "CphiUg";
  case ProductKind::CphiVg: return "CphiVg";
  case ProductKind::UgCphi: return "UgCphi";
  case ProductKind::VgCphi: return "VgCphi";
  }
  return "?";
}

SelfMapSymbol::SelfMapSymbol(TruncatedSeries phi, TruncatedSeries g, double r_max, GapFunction gap)
    : phi_(std::move(phi)), g_(std::move(g)), dphi_(derivative(phi_)), d2phi_(derivative(dphi_)),
      dg_(derivative(g_)), d2g_(derivative(dg_)), gap_(std::move(gap)) {
  phi_sup_ = circle_sup(phi_, r_max);
  if (phi_sup_ > 1.0 + kSelfMapSlack) {
    std::ostringstream os;
    os << "phi is not a self-map of the disk: sup |phi| = " << phi_sup_ << " on |z| = " << r_max;
    throw std::invalid_argument(os.str());
  }
}

SymbolJet SelfMapSymbol::jet(const DiskPoint& p) const {
  SymbolJet s;
  s.phi = eval_jet(phi_, p.z);
  s.g = eval_jet(g_, p.z);
  s.g_at_phi = eval_jet(g_, s.phi.value);
  s.phi_gap = gap_ ? gap_(p) : 1.0 - std::norm(s.phi.value);
  return s;
}

SymbolJet SelfMapSymbol::jet(complex z) const {
  const double r = std::abs(z);
  return jet(DiskPoint{z, r, 1.0 - r});
}

SelfMapSymbol SelfMapSymbol::scaled_g(complex c) const {
  SelfMapSymbol out = *this;
  out.g_ = c * g_;
  out.dg_ = derivative(out.g_);
  out.d2g_ = derivative(out.dg_);
  return out;
}

std::vector<SymbolJet> sample_symbol(const SelfMapSymbol& sym, const DiskGrid& grid) {
  std::vector<SymbolJet> out(grid.size());
  parallel_for(out.size(), [&](std::size_t i) { out[i] = sym.jet(grid.point(i)); });
  return out;
}

TruncatedSeries apply_Ug(const SelfMapSymbol& sym, const TruncatedSeries& f, std::size_t n_work) {
  return ug_bounded(sym, f, n_work).series;
}

TruncatedSeries apply_Vg(const SelfMapSymbol& sym, const TruncatedSeries& f, std::size_t n_work) {
  return vg_bounded(sym, f, n_work).series;
}

Truncated apply_product(ProductKind kind, const SelfMapSymbol& sym, const TruncatedSeries& f,
                        std::size_t n_work) {
  switch (kind) {
  case ProductKind::CphiUg:
    return then_compose(ug_bounded(sym, f, n_work), sym.phi(), n_work);
  case ProductKind::CphiVg:
    return then_compose(vg_bounded(sym, f, n_work), sym.phi(), n_work);
  case ProductKind::UgCphi: {
    const auto c = compose_bounded(f, sym.phi(), n_work);
    auto m = multiply_bounded(c.series, sym.dg(), n_work - 1);
    m.tail_bound += c.tail_bound * sym.dg().l1_norm();
    return integrate_bounded(std::move(m));
  }
  case ProductKind::VgCphi: {
    const auto c = compose_bounded(derivative(f), sym.phi(), n_work);
    auto m = multiply_bounded(c.series, sym.g(), n_work - 1);
    m.tail_bound += c.tail_bound * sym.g().l1_norm();
    return integrate_bounded(std::move(m));
  }
  }
  throw std::logic_error("unhandled operator kind");
}

complex product_first_derivative(ProductKind kind, const SymbolJet& s, const Jet& f) {
  const complex dphi = s.phi.d1;
  const Jet& G = s.g_at_phi;
  switch (kind) {
  case ProductKind::VgCphi: return f.d1 * s.g.value;
  case ProductKind::UgCphi: return f.value * s.g.d1;
  case ProductKind::CphiVg: return f.d1 * G.value * dphi;
  case ProductKind::CphiUg: return f.value * G.d1 * dphi;
  }
  return {};
}

complex product_second_derivative(ProductKind kind, const SymbolJet& s, const Jet& f) {
  const complex dphi = s.phi.d1;
  const complex dphi2 = dphi * dphi;
  const complex d2phi = s.phi.d2;
  const Jet& G = s.g_at_phi;
  switch (kind) {
  case ProductKind::VgCphi: return dphi * s.g.value * f.d2 + s.g.d1 * f.d1;
  case ProductKind::UgCphi: return dphi * s.g.d1 * f.d1 + s.g.d2 * f.value;
  case ProductKind::CphiVg: return G.value * dphi2 * f.d2 + (G.d1 * dphi2 + G.value * d2phi) * f.d1;
  case ProductKind::CphiUg: return G.d1 * dphi2 * f.d1 + (G.d2 * dphi2 + G.d1 * d2phi) * f.value;
  }
  return {};
}

complex product_second_derivative(ProductKind kind, const SelfMapSymbol& sym,
                                  const TruncatedSeries& f, complex z) {
  const auto s = sym.jet(z);
  return product_second_derivative(kind, s, eval_jet(f, s.phi.value));
}

std::pair<complex, complex> product_value_at_zero(ProductKind kind, const SelfMapSymbol& sym,
                                                  const TruncatedSeries& f) {
  const auto s = sym.jet(complex{});
  const auto F = eval_jet(f, s.phi.value);
  const complex d1 = product_first_derivative(kind, s, F);
  switch (kind) {
  case ProductKind::VgCphi:
  case ProductKind::UgCphi:
    return {complex{}, d1};
  case ProductKind::CphiUg:
    return {eval(integrate_from_zero(exact_product(f, sym.dg())), s.phi.value), d1};
  case ProductKind::CphiVg:
    return {eval(integrate_from_zero(exact_product(derivative(f), sym.g())), s.phi.value), d1};
  }
  return {};
}

std::pair<complex, complex> symbol_weights(ProductKind kind, const SymbolJet& s) {
  const complex dphi = s.phi.d1;
  const complex dphi2 = dphi * dphi;
  const complex d2phi = s.phi.d2;
  const Jet& G = s.g_at_phi;
  switch (kind) {
  case ProductKind::VgCphi: return {s.g.value * dphi, s.g.d1};
  case ProductKind::CphiVg: return {G.value * dphi2, G.d1 * dphi2 + G.value * d2phi};
  case ProductKind::CphiUg: return {G.d1 * dphi2, G.d2 * dphi2 + G.d1 * d2phi};
  case ProductKind::UgCphi: return {s.g.d1 * dphi, s.g.d2};
  }
  return {};
}

double product_zygmund_norm(ProductKind kind, const SelfMapSymbol& sym,
                            const std::vector<SymbolJet>& samples, const TruncatedSeries& f,
                            double beta, const DiskGrid& grid) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("symbol samples do not match grid");
  const auto v = Weight::standard(beta);
  const auto [t0, t1] = product_value_at_zero(kind, sym, f);
  std::vector<double> coarse(grid.size());
  parallel_for(coarse.size(), [&](std::size_t i) {
    const auto& s = samples[i];
    coarse[i] = v(grid.point(i)) *
                std::abs(product_second_derivative(kind, s, eval_jet(f, s.phi.value)));
  });
  for (double x : coarse)
    if (!std::isfinite(x))
      throw std::runtime_error("non-finite second derivative of the operator image");
  const PointFunction h = [&](const DiskPoint& p) {
    const auto s = sym.jet(p);
    return v(p) * std::abs(product_second_derivative(kind, s, eval_jet(f, s.phi.value)));
  };
  return std::abs(t0) + std::abs(t1) + refine_sup(coarse, h, grid).value;
}

double operator_norm_estimate(ProductKind kind, const SelfMapSymbol& sym, double alpha,
                              double beta, const DiskGrid& grid, int sample_count,
                              std::uint64_t seed) {
  if (sample_count < 1)
    throw std::invalid_argument("sample_count must be at least 1");
  const auto samples = sample_symbol(sym, grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> degree(0, 32);
  double best = 0.0;
  for (int k = 0; k < sample_count; ++k) {
    std::vector<complex> c(static_cast<std::size_t>(degree(rng)) + 1);
    for (auto& x : c)
      x = complex(normal(rng), normal(rng));
    TruncatedSeries f(std::move(c));
    if (f.is_zero())
      continue;
    const double n = zygmund_norm(f, alpha, grid);
    f = (1.0 / n) * f;
    best = std::max(best, product_zygmund_norm(kind, sym, samples, f, beta, grid));
  }
  return best;
}

PhiFamily phi_from_json(const nlohmann::json& j, std::size_t n_work) {
  const auto family = require(j, "family").get<std::string>();
  if (family == "scaled_identity") {
    const double s = j.value("scale", 1.0);
    if (!(std::abs(s) <= 1.0))
      throw std::invalid_argument("scaled_identity needs |scale| <= 1");
    const double s2 = s * s;
    return {TruncatedSeries({0.0, s}),
            [s2](const DiskPoint& p) { return (1.0 - s2) + s2 * p.one_minus_r2(); }};
  }
  if (family == "mobius") {
    const complex a = complex_from_json(require(j, "a"));
    const double m = std::abs(a);
    if (!(m < 1.0))
      throw std::invalid_argument("mobius needs |a| < 1");
    // (a - z)/(1 - conj(a) z) = a - (1 - |a|^2) sum_{k>=1} conj(a)^{k-1} z^k; the
    // tail after z^K has l1 mass (1 + |a|) |a|^K.
    std::vector<complex> c{a};
    complex p = 1.0;
    const double c1 = 1.0 - m * m;
    for (std::size_t k = 1; k <= n_work; ++k) {
      c.push_back(-c1 * p);
      p *= std::conj(a);
      if ((1.0 + m) * std::pow(m, static_cast<double>(k)) < 1e-16)
        break;
    }
    return {TruncatedSeries(std::move(c)), [a, c1](const DiskPoint& p) {
              return c1 * p.one_minus_r2() / std::norm(1.0 - std::conj(a) * p.z);
            }};
  }
  if (family == "poly")
    return {series_from_json(require(j, "coeffs")), {}};
  throw std::invalid_argument("unknown phi family '" + family + "'");
}

TruncatedSeries g_from_json(const nlohmann::json& j, std::size_t n_work) {
  const auto family = require(j, "family").get<std::string>();
  TruncatedSeries g;
  if (family == "identity") {
    g = TruncatedSeries({0.0, 1.0});
  } else if (family == "log_cesaro") {
    std::vector<complex> c(n_work + 1);
    for (std::size_t k = 1; k <= n_work; ++k)
      c[k] = 1.0 / static_cast<double>(k);
    g = TruncatedSeries(std::move(c));
  } else if (family == "poly") {
    g = series_from_json(require(j, "coeffs"));
  } else {
    throw std::invalid_argument("unknown g family '" + family + "'");
  }
  if (j.contains("scale"))
    g = complex_from_json(j.at("scale")) * g;
  return g;
}

SelfMapSymbol symbol_from_json(const nlohmann::json& phi, const nlohmann::json& g,
                               const DiskGrid& grid, std::size_t n_work) {
  auto p = phi_from_json(phi, n_work);
  return SelfMapSymbol(std::move(p.series), g_from_json(g, n_work), grid.r_max(), std::move(p.gap));
}

std::string family_label(const nlohmann::json& j) {
  if (j.contains("label"))
    return j.at("label").get<std::string>();
  const auto family = j.value("family", std::string("?"));
  std::string base;
  if (family == "scaled_identity") {
    const double s = j.value("scale", 1.0);
    const double inv = 1.0 / s;
    if (s == 1.0)
      base = "z";
    else if (std::abs(inv - std::round(inv)) < 1e-12)
      base = "z/" + format_number(std::round(inv));
    else
      base = format_number(s) + "z";
  } else if (family == "mobius") {
    base = "mobius(" + format_complex(complex_from_json(j.at("a"))) + ")";
  } else if (family == "identity") {
    base = "z";
  } else if (family == "log_cesaro") {
    base = "log(1/(1-z))";
  } else if (family == "poly") {
    const auto s = series_from_json(j.at("coeffs"));
    const auto c = s.coeffs();
    const auto nonzero = std::count_if(c.begin(), c.end(), [](complex x) { return x != complex{}; });
    if (nonzero == 1 && c.back() == complex(1.0))
      base = s.degree() == 0 ? "1" : s.degree() == 1 ? "z" : "z^" + std::to_string(s.degree());
    else
      base = "poly" + std::to_string(s.degree());
  } else {
    base = family;
  }
  if (j.contains("scale") && family != "scaled_identity")
    base = format_complex(complex_from_json(j.at("scale"))) + "*" + base;
  return base;
}

} // namespace zygmund
