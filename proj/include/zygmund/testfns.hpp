// Extremal test-function families used in the boundedness and essential-norm
// arguments, evaluated from closed forms, plus a checker for the identities
// and uniform norm bounds claimed for them.

#ifndef ZYGMUND_TESTFNS_HPP
#define ZYGMUND_TESTFNS_HPP

#include "zygmund/series.hpp"
#include "zygmund/spaces.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zygmund {

// With b = a (the point phi(z_n) for the sequence families), E = 1 - conj(a) z:
//   f_a        (1/a~)[(1-|a|^2)^2 E^-alpha - (1-|a|^2) E^(1-alpha)]
//   h_a        (1/a~) int_0^z (1-|a|^2) E(w)^-alpha dw
//   g_a        f_a - h_a
//   k_a        p(a~ z) / (a~ log(1/(1-|a|))),  p(u) = (u-1)((1+log(1/(1-u)))^2 + 1)
//   t_a_log    log(2/E)
//   h_n        h(b~ z)/(b~ L) - int_0^z log^3(2/(1-b~ w)) dw / L^2,
//              h(u) = (u-1)((1+log(2/(1-u)))^2 + 1),  L = log(2/(1-|b|^2))
//   f_n        h(b~ z)/(b L)
//   g_n        (b~ z - 1)/b ((1+log(1/(1-b~ z)))^2 + 1)/Lam - a_n,  Lam = log(1/(1-|b|^2))
//   O_n        (1 + log^2(2/(1-b~ z))) / L
//   t_n_kernel (1-|a|^2)^2 E^-alpha
// where a~ is the complex conjugate.  Principal branches throughout; Re E > 0
// on the closed disk.
enum class FamilyKind { f_a, h_a, g_a, k_a, t_a_log, h_n, f_n, g_n, O_n, t_n_kernel };

inline constexpr FamilyKind kAllFamilies[] = {
    FamilyKind::f_a, FamilyKind::h_a,  FamilyKind::g_a,  FamilyKind::k_a, FamilyKind::t_a_log,
    FamilyKind::h_n, FamilyKind::f_n,  FamilyKind::g_n,  FamilyKind::O_n, FamilyKind::t_n_kernel};

std::string family_name(FamilyKind kind);
FamilyKind parse_family(std::string_view name);
// Whether the family is only defined for 1/2 < |a| < 1.
bool requires_large_a(FamilyKind kind);
bool depends_on_alpha(FamilyKind kind);

class TestFamily {
public:
  // Throws std::invalid_argument for a outside the admissible range or
  // alpha <= 0.
  TestFamily(FamilyKind kind, complex a, double alpha = 1.0);

  FamilyKind kind() const { return kind_; }
  complex a() const { return a_; }
  double alpha() const { return alpha_; }

  // Value, first and second derivative at z (|z| <= 1).
  Jet jet(complex z) const;
  complex eval(complex z, int order = 0) const;

private:
  FamilyKind kind_;
  complex a_;
  double alpha_;
};

// ||F||_{Z^exponent} from the closed-form derivatives.
double family_zygmund_norm(const TestFamily& fam, double exponent, const DiskGrid& grid);

// Degree-`degree` series from samples on the unit circle (discrete Fourier
// coefficients), with the largest deviation from the closed form observed
// between the sample nodes.
struct SeriesFit {
  TruncatedSeries series;
  double residual = 0.0;
};
SeriesFit fit_series(const TestFamily& fam, std::size_t degree = kDefaultWorkDegree);

// A pinned value or derivative claimed for a family.
struct IdentityClaim {
  std::string family;
  std::string statement;
  complex a;
  double alpha = 0.0;
  complex observed;
  complex claimed;
  double error = 0.0;  // |observed - claimed| / max(1, |claimed|)
  bool holds = false;
};

// A claimed uniform bound of ||F_a||_{Z^exponent} over |a| in (1/2, 1),
// tested as: finite, and max/min over the a-grid at most `spread_limit`.
struct NormBoundClaim {
  std::string family;
  std::string statement;
  double alpha = 0.0;
  double exponent = 0.0;
  std::vector<complex> a_values;
  std::vector<double> norms;
  double spread = 0.0;
  bool holds = false;
};

struct ClaimReport {
  std::vector<IdentityClaim> identities;
  std::vector<NormBoundClaim> norm_bounds;
  bool all_hold() const;
};

struct ClaimOptions {
  double tolerance = 1e-8;
  double spread_limit = 20.0;
  bool norm_bounds = true;
};

// Never alters the definitions: mismatches are reported, not repaired.
ClaimReport verify_family_claims(FamilyKind kind, std::span<const complex> a_grid,
                                 std::span<const double> alpha_grid, const DiskGrid& grid,
                                 const ClaimOptions& options = {});

nlohmann::json to_json(const ClaimReport& report);

} // namespace zygmund

#endif
