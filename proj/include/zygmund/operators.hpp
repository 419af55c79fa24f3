// Volterra-type operators U_g, V_g, the composition operator C_phi and their
// four products, in series form and as pointwise derivative evaluators.

#ifndef ZYGMUND_OPERATORS_HPP
#define ZYGMUND_OPERATORS_HPP

#include "zygmund/series.hpp"
#include "zygmund/spaces.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zygmund {

//   CphiUg f = (U_g f) o phi          CphiVg f = (V_g f) o phi
//   UgCphi f = int_0^z f(phi) g'      VgCphi f = int_0^z f'(phi) phi' g
enum class ProductKind { CphiUg, CphiVg, UgCphi, VgCphi };

inline constexpr std::array<ProductKind, 4> kAllKinds{ProductKind::CphiUg, ProductKind::CphiVg,
                                                      ProductKind::UgCphi, ProductKind::VgCphi};

// Accepts "cphiug", "CphiUg", "cphi_ug" and similar spellings.
ProductKind parse_kind(std::string_view name);
std::string kind_name(ProductKind kind);  // "CphiUg", ...

// 1 - |w|^2 for w = phi(z), given the point z.
using GapFunction = std::function<double(const DiskPoint&)>;

// Everything about phi and g at one point z: jets of phi and g at z, the jet
// of g at phi(z), and 1 - |phi(z)|^2.
struct SymbolJet {
  Jet phi;
  Jet g;
  Jet g_at_phi;
  double phi_gap = 1.0;

  double phi_modulus() const { return std::abs(phi.value); }
};

class SelfMapSymbol {
public:
  // Throws std::invalid_argument when sup |phi| on the circle |z| = r_max
  // exceeds 1 + 1e-9.  `gap` may supply an accurate 1 - |phi(z)|^2 (for
  // families where a closed form avoids cancellation near the boundary).
  SelfMapSymbol(TruncatedSeries phi, TruncatedSeries g, double r_max, GapFunction gap = {});

  const TruncatedSeries& phi() const { return phi_; }
  const TruncatedSeries& g() const { return g_; }
  const TruncatedSeries& dphi() const { return dphi_; }
  const TruncatedSeries& d2phi() const { return d2phi_; }
  const TruncatedSeries& dg() const { return dg_; }
  const TruncatedSeries& d2g() const { return d2g_; }
  double phi_sup_modulus() const { return phi_sup_; }

  SymbolJet jet(const DiskPoint& p) const;
  SymbolJet jet(complex z) const;

  // Same phi, g replaced by c * g.
  SelfMapSymbol scaled_g(complex c) const;

private:
  TruncatedSeries phi_, g_, dphi_, d2phi_, dg_, d2g_;
  double phi_sup_ = 0.0;
  GapFunction gap_;
};

// Symbol jets at every grid point, ring-major like the grid.
std::vector<SymbolJet> sample_symbol(const SelfMapSymbol& sym, const DiskGrid& grid);

TruncatedSeries apply_Ug(const SelfMapSymbol& sym, const TruncatedSeries& f,
                         std::size_t n_work = kDefaultWorkDegree);
TruncatedSeries apply_Vg(const SelfMapSymbol& sym, const TruncatedSeries& f,
                         std::size_t n_work = kDefaultWorkDegree);
Truncated apply_product(ProductKind kind, const SelfMapSymbol& sym, const TruncatedSeries& f,
                        std::size_t n_work = kDefaultWorkDegree);

// Pointwise first and second derivative of T f from the symbol jet at z and
// the jet of f at phi(z).
complex product_first_derivative(ProductKind kind, const SymbolJet& s, const Jet& f_at_phi);
complex product_second_derivative(ProductKind kind, const SymbolJet& s, const Jet& f_at_phi);
complex product_second_derivative(ProductKind kind, const SelfMapSymbol& sym,
                                  const TruncatedSeries& f, complex z);

// (Tf)(0) and (Tf)'(0), without truncation.
std::pair<complex, complex> product_value_at_zero(ProductKind kind, const SelfMapSymbol& sym,
                                                  const TruncatedSeries& f);

// Symbol weights (u1, u2) whose weighted behavior governs boundedness:
//   VgCphi: g phi',                 g'
//   CphiVg: g(phi) phi'^2,          g'(phi) phi'^2 + g(phi) phi''
//   CphiUg: g'(phi) phi'^2,         g''(phi) phi'^2 + g'(phi) phi''
//   UgCphi: g' phi',                g''
std::pair<complex, complex> symbol_weights(ProductKind kind, const SymbolJet& s);

// Z^beta norm of T f, using the pointwise derivative path.  `samples` holds
// sample_symbol(sym, grid).
double product_zygmund_norm(ProductKind kind, const SelfMapSymbol& sym,
                            const std::vector<SymbolJet>& samples, const TruncatedSeries& f,
                            double beta, const DiskGrid& grid);

// Lower estimate of ||T||_{Z^alpha -> Z^beta}: the largest ||T f||_{Z^beta}
// over `sample_count` random polynomials of degree <= 32 with ||f||_{Z^alpha}
// = 1.  The k-th sample depends only on the seed and k.
double operator_norm_estimate(ProductKind kind, const SelfMapSymbol& sym, double alpha,
                              double beta, const DiskGrid& grid, int sample_count,
                              std::uint64_t seed = 20240601);

// Symbol families.
//   phi: {"family": "scaled_identity", "scale": s}
//        {"family": "mobius", "a": a}                (a - z) / (1 - conj(a) z)
//        {"family": "poly", "coeffs": [...]}
//   g:   {"family": "identity"}
//        {"family": "log_cesaro"}                     log(1/(1-z)) to degree n_work
//        {"family": "poly", "coeffs": [...]}
//   either may carry "scale" (a number or [re, im]) for g, multiplying g.
struct PhiFamily {
  TruncatedSeries series;
  GapFunction gap;
};
PhiFamily phi_from_json(const nlohmann::json& j, std::size_t n_work = kDefaultWorkDegree);
TruncatedSeries g_from_json(const nlohmann::json& j, std::size_t n_work = kDefaultWorkDegree);
SelfMapSymbol symbol_from_json(const nlohmann::json& phi, const nlohmann::json& g,
                               const DiskGrid& grid, std::size_t n_work = kDefaultWorkDegree);
// Short human label, e.g. "z/2", "mobius(0.5)", "log(1/(1-z))".
std::string family_label(const nlohmann::json& j);

} // namespace zygmund

#endif
