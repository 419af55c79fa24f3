#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "zygmund/operators.hpp"

#include <cmath>

using namespace zygmund;
using zygmund::testing::random_poly;
using zygmund::testing::random_self_map;

namespace {

const DiskGrid& grid() {
  static const DiskGrid g{};
  return g;
}

SelfMapSymbol symbol(TruncatedSeries phi, TruncatedSeries g) {
  return SelfMapSymbol(std::move(phi), std::move(g), grid().r_max());
}

double coeff_distance(const TruncatedSeries& a, const TruncatedSeries& b) {
  double d = 0.0;
  for (std::size_t k = 0; k <= std::max(a.degree(), b.degree()); ++k)
    d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// Five-point central second difference of a complex-analytic function along
// the real direction.
template <class F>
complex second_difference(F&& f, complex z, double h) {
  return (-f(z + 2.0 * h) + 16.0 * f(z + h) - 30.0 * f(z) + 16.0 * f(z - h) - f(z - 2.0 * h)) /
         (12.0 * h * h);
}

const TruncatedSeries Z{0.0, 1.0};
const TruncatedSeries ONE{1.0};

} // namespace

TEST_CASE("kind names round-trip") {
  for (auto k : kAllKinds)
    CHECK(parse_kind(kind_name(k)) == k);
  CHECK(parse_kind("vgcphi") == ProductKind::VgCphi);
  CHECK(parse_kind("cphi_ug") == ProductKind::CphiUg);
  CHECK_THROWS_AS(parse_kind("cphi"), std::invalid_argument);
}

TEST_CASE("self-map certificate") {
  CHECK(symbol(0.5 * Z, Z).phi_sup_modulus() == doctest::Approx(0.5 * grid().r_max()));
  CHECK_THROWS_AS(symbol(1.1 * Z, Z), std::invalid_argument);
  CHECK_THROWS_AS(symbol(TruncatedSeries({0.5, 0.6}), Z), std::invalid_argument);

  const auto mob = symbol_from_json({{"family", "mobius"}, {"a", 0.5}}, {{"family", "identity"}}, grid());
  CHECK(mob.phi_sup_modulus() <= 1.0 + 1e-9);
  CHECK(mob.phi_sup_modulus() > 1.0 - 1e-9);

  SUBCASE("derivative caches") {
    std::mt19937_64 rng(3);
    const auto s = symbol(random_self_map(rng, 6), random_poly(rng, 7));
    CHECK(s.dphi() == derivative(s.phi()));
    CHECK(s.d2phi() == derivative(derivative(s.phi())));
    CHECK(s.dg() == derivative(s.g()));
    CHECK(s.d2g() == derivative(derivative(s.g())));
  }
}

TEST_CASE("apply_Ug and apply_Vg") {
  const auto id = symbol(Z, Z);
  CHECK(apply_Ug(id, ONE) == Z);
  CHECK(apply_Ug(id, TruncatedSeries{}).is_zero());
  const auto sq = symbol(Z, TruncatedSeries({0.0, 0.0, 1.0}));
  CHECK(coeff_distance(apply_Ug(sq, Z), TruncatedSeries({0.0, 0.0, 0.0, 2.0 / 3.0})) < 1e-15);

  const auto unit = symbol(Z, ONE);
  const TruncatedSeries f{3.0, -1.0, complex(0.0, 2.0)};
  CHECK(apply_Vg(unit, f) == f - TruncatedSeries::constant(f[0]));
  CHECK(apply_Vg(id, TruncatedSeries{complex(4.0, 1.0)}).is_zero());
  CHECK(coeff_distance(apply_Vg(id, TruncatedSeries({0.0, 0.0, 1.0})),
                       TruncatedSeries({0.0, 0.0, 0.0, 2.0 / 3.0})) < 1e-15);

  SUBCASE("integration by parts") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
      const auto g = random_poly(rng, 1 + t % 32);
      const auto h = random_poly(rng, 32 - t % 17);
      const auto s = symbol(Z, g);
      const auto lhs = apply_Ug(s, h) + apply_Vg(s, h);
      const auto rhs = multiply(g, h) - TruncatedSeries::constant(g[0] * h[0]);
      CHECK(coeff_distance(lhs, rhs) < 1e-12);
      CHECK(apply_Ug(s, h)[0] == complex{});
      CHECK(apply_Vg(s, h)[0] == complex{});
    }
  }
}

TEST_CASE("apply_product examples") {
  const TruncatedSeries z2{0.0, 0.0, 1.0};
  CHECK(apply_product(ProductKind::VgCphi, symbol(Z, ONE), z2).series == z2);
  std::mt19937_64 rng(5);
  const auto phi = random_self_map(rng, 4);
  CHECK(coeff_distance(apply_product(ProductKind::UgCphi, symbol(phi, Z), ONE).series, Z) < 1e-15);
  CHECK(coeff_distance(apply_product(ProductKind::CphiUg, symbol(0.5 * Z, Z), ONE).series, 0.5 * Z) <
        1e-15);

  SUBCASE("zero at the origin for the integral forms") {
    for (int t = 0; t < 10; ++t) {
      const auto s = symbol(random_self_map(rng, 3), random_poly(rng, 5));
      const auto f = random_poly(rng, 6);
      CHECK(apply_product(ProductKind::UgCphi, s, f).series[0] == complex{});
      CHECK(apply_product(ProductKind::VgCphi, s, f).series[0] == complex{});
      CHECK(product_value_at_zero(ProductKind::UgCphi, s, f).first == complex{});
      CHECK(product_value_at_zero(ProductKind::VgCphi, s, f).first == complex{});
    }
  }

  SUBCASE("CphiUg agrees with composing U_g f within the tail bound") {
    const auto s = symbol(random_self_map(rng, 12, 0.95), random_poly(rng, 20));
    const auto f = random_poly(rng, 25);
    const auto t = apply_product(ProductKind::CphiUg, s, f, 128);
    CHECK(t.tail_bound > 0.0);
    const auto ug = apply_Ug(s, f);
    for (double r : {0.0, 0.4, 0.9, 0.999})
      for (double th : {0.0, 1.0, 2.5}) {
        const complex z = std::polar(r, th);
        CHECK(std::abs(eval(t.series, z) - eval(ug, eval(s.phi(), z))) <=
              t.tail_bound + 1e-11 * (1.0 + ug.l1_norm()));
      }
  }
}

TEST_CASE("pointwise derivatives match the series path") {
  std::mt19937_64 rng(2024);
  for (auto kind : kAllKinds) {
    CAPTURE(kind_name(kind));
    const auto s = symbol(random_self_map(rng, 4), random_poly(rng, 4));
    const auto f = random_poly(rng, 8);
    const auto series = apply_product(kind, s, f).series;
    REQUIRE(apply_product(kind, s, f).tail_bound == 0.0);
    const auto [v0, d0] = product_value_at_zero(kind, s, f);
    CHECK(std::abs(v0 - series[0]) < 1e-13 * (1.0 + series.l1_norm()));
    CHECK(std::abs(d0 - series[1]) < 1e-13 * (1.0 + series.l1_norm()));
    for (int i = 0; i < 20; ++i) {
      const complex z = std::polar(0.05 + 0.04 * i, 0.7 * i);
      const auto exact = eval_jet(series, z);
      const auto jet = s.jet(z);
      const auto f_phi = eval_jet(f, jet.phi.value);
      const complex d2 = product_second_derivative(kind, jet, f_phi);
      const complex fd = second_difference([&](complex w) { return eval(series, w); }, z, 2e-3);
      CHECK(std::abs(d2 - fd) < 1e-6 * std::max(1.0, std::abs(d2)));
      CHECK(std::abs(d2 - exact.d2) < 1e-11 * std::max(1.0, std::abs(d2)));
      CHECK(std::abs(product_first_derivative(kind, jet, f_phi) - exact.d1) <
            1e-11 * std::max(1.0, std::abs(exact.d1)));
      CHECK(d2 == product_second_derivative(kind, s, f, z));
    }
  }
  const auto s = symbol(random_self_map(rng, 4), random_poly(rng, 4));
  SUBCASE("special cases") {
    const auto f = random_poly(rng, 8);
    const complex z(0.3, 0.1);
    CHECK(std::abs(product_second_derivative(ProductKind::VgCphi, symbol(Z, ONE), f, z) -
                   eval_jet(f, z).d2) < 1e-13);
    for (auto kind : {ProductKind::VgCphi, ProductKind::CphiVg})
      CHECK(product_second_derivative(kind, s, TruncatedSeries{complex(2.0, 1.0)}, z) == complex{});
  }
}

TEST_CASE("symbol weights are the coefficients of the second derivative") {
  std::mt19937_64 rng(77);
  const auto s = symbol(random_self_map(rng, 5), random_poly(rng, 6));
  const TruncatedSeries half_z2{0.0, 0.0, 0.5};
  for (double r : {0.0, 0.5, 0.95}) {
    const auto jet = s.jet(std::polar(r, 1.3));
    const complex w = jet.phi.value;
    const auto d2 = [&](ProductKind k, const TruncatedSeries& f) {
      return product_second_derivative(k, jet, eval_jet(f, w));
    };
    for (auto kind : {ProductKind::VgCphi, ProductKind::CphiVg}) {
      const auto [u1, u2] = symbol_weights(kind, jet);
      // (Tf)'' = u1 f''(phi) + u2 f'(phi)
      CHECK(std::abs(d2(kind, Z) - u2) < 1e-13 * (1.0 + std::abs(u2)));
      CHECK(std::abs(d2(kind, half_z2) - (u1 + u2 * w)) < 1e-12 * (1.0 + std::abs(u1)));
    }
    for (auto kind : {ProductKind::CphiUg, ProductKind::UgCphi}) {
      const auto [u1, u2] = symbol_weights(kind, jet);
      // (Tf)'' = u1 f'(phi) + u2 f(phi)
      CHECK(std::abs(d2(kind, ONE) - u2) < 1e-13 * (1.0 + std::abs(u2)));
      CHECK(std::abs(d2(kind, Z) - (u1 + u2 * w)) < 1e-12 * (1.0 + std::abs(u1)));
    }
  }
}

TEST_CASE("operator_norm_estimate") {
  const DiskGrid small(GridParams{30, 128, 20, 1});
  const auto zero_g = SelfMapSymbol(Z, TruncatedSeries{}, small.r_max());
  for (auto kind : kAllKinds)
    CHECK(operator_norm_estimate(kind, zero_g, 1.0, 1.0, small, 3) == 0.0);

  // f -> f - f(0) has norm at most one, attained at z^2.
  const auto unit = SelfMapSymbol(Z, ONE, small.r_max());
  const double est = operator_norm_estimate(ProductKind::VgCphi, unit, 1.0, 1.0, small, 8);
  CHECK(est <= 1.0 + 1e-12);
  CHECK(est > 0.1);
  const auto samples = sample_symbol(unit, small);
  const TruncatedSeries z2{0.0, 0.0, 1.0};
  CHECK(product_zygmund_norm(ProductKind::VgCphi, unit, samples, (1.0 / zygmund_norm(z2, 1.0, small)) * z2,
                             1.0, small) == doctest::Approx(1.0));

  std::mt19937_64 rng(8);
  const auto s = SelfMapSymbol(random_self_map(rng, 3), random_poly(rng, 3), small.r_max());
  double prev = 0.0;
  for (int n : {1, 2, 4, 8}) {
    const double e = operator_norm_estimate(ProductKind::CphiUg, s, 1.5, 1.0, small, n);
    CHECK(e >= prev);
    prev = e;
  }
  CHECK_THROWS_AS(operator_norm_estimate(ProductKind::CphiUg, s, 1.5, 1.0, small, 0),
                  std::invalid_argument);
}

TEST_CASE("symbol families from JSON") {
  const nlohmann::json half = {{"family", "scaled_identity"}, {"scale", 0.5}};
  const nlohmann::json mob = {{"family", "mobius"}, {"a", 0.5}};
  const nlohmann::json sq = {{"family", "poly"}, {"coeffs", {0, 0, 1}}};
  const nlohmann::json cesaro = {{"family", "log_cesaro"}};

  CHECK(family_label(half) == "z/2");
  CHECK(family_label(mob) == "mobius(0.5)");
  CHECK(family_label(sq) == "z^2");
  CHECK(family_label(cesaro) == "log(1/(1-z))");
  CHECK(family_label({{"family", "identity"}, {"scale", 2}}) == "2*z");
  CHECK(family_label({{"family", "identity"}, {"label", "custom"}}) == "custom");

  const auto g = g_from_json(cesaro, 64);
  CHECK(g.degree() == 64);
  CHECK(g[0] == complex{});
  CHECK(g[7] == complex(1.0 / 7.0));
  CHECK(g_from_json({{"family", "identity"}, {"scale", {0, 2}}})[1] == complex(0.0, 2.0));

  SUBCASE("mobius series and gap") {
    const auto p = phi_from_json(mob);
    CHECK(p.series.degree() < 80);
    for (double r : {0.0, 0.3, 0.8, 0.99}) {
      const complex z = std::polar(r, 0.4);
      const complex exact = (0.5 - z) / (1.0 - 0.5 * z);
      CHECK(std::abs(eval(p.series, z) - exact) < 1e-14);
      const double gap = p.gap(DiskPoint::polar(r, 0.4));
      CHECK(gap == doctest::Approx(1.0 - std::norm(exact)).epsilon(1e-12));
    }
    // near the boundary the closed form keeps full relative accuracy
    const auto q = DiskPoint::from_gap(std::exp2(-40.0), 0.0);
    CHECK(p.gap(q) == doctest::Approx(0.75 * q.one_minus_r2() / 0.25).epsilon(1e-10));
  }

  CHECK_THROWS_AS(phi_from_json({{"family", "mobius"}, {"a", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(phi_from_json({{"family", "spiral"}}), std::invalid_argument);
  CHECK_THROWS_AS(g_from_json({{"scale", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(symbol_from_json({{"family", "poly"}, {"coeffs", {0, 2}}}, cesaro, grid()),
                  std::invalid_argument);

  SUBCASE("scaled_g") {
    const auto s = symbol_from_json(half, sq, grid());
    const auto t = s.scaled_g(complex(0.0, -3.0));
    CHECK(t.g() == complex(0.0, -3.0) * s.g());
    CHECK(t.d2g() == derivative(derivative(t.g())));
    CHECK(t.phi() == s.phi());
  }
}
