#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "zygmund/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace zygmund;
using zygmund::testing::random_poly;

namespace {

const DiskGrid& default_grid() {
  static const DiskGrid grid{};
  return grid;
}

// Independent 1-D oracle: dense scan of a radial profile plus a parabola
// through the best three samples.
double dense_radial_max(const std::function<double(double)>& h, double lo, double hi,
                        int samples = 2'000'000) {
  double best = -1.0;
  int best_i = 0;
  const double step = (hi - lo) / samples;
  for (int i = 0; i <= samples; ++i) {
    const double v = h(lo + i * step);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (best_i == 0 || best_i == samples)
    return best;
  const double a = h(lo + (best_i - 1) * step), c = h(lo + (best_i + 1) * step);
  const double denom = a - 2 * best + c;
  return denom < 0 ? best - (a - c) * (a - c) / (8 * denom) : best;
}

} // namespace

TEST_CASE("weights") {
  const auto v = Weight::standard(1.5);
  CHECK(v(0.0) == 1.0);
  CHECK(v(complex(0.6, 0.0)) == doctest::Approx(std::pow(0.64, 1.5)));
  CHECK(Weight::logarithmic()(0.0) == doctest::Approx(1.0 / std::log(2.0)));
  CHECK_THROWS_AS(Weight::standard(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Weight::standard(-1.0), std::invalid_argument);

  SUBCASE("radial, positive and non-increasing; standard weights bounded by 1") {
    for (const auto& w : {Weight::standard(0.5), Weight::standard(3.0), Weight::logarithmic()}) {
      double prev = w(0.0);
      for (double r = 0.05; r < 1.0; r += 0.05) {
        const double cur = w(std::polar(r, 2.0 * r));
        CHECK(cur > 0.0);
        CHECK(cur <= prev);
        CHECK(cur == doctest::Approx(w(r)));
        prev = cur;
      }
    }
    CHECK(Weight::standard(0.5)(0.0) <= 1.0);
  }
}

TEST_CASE("disk grid layout") {
  const auto& g = default_grid();
  const auto radii = g.radii();
  CHECK(radii.front() == 0.0);
  CHECK(g.r_max() == 1.0 - std::exp2(-40.0));
  for (std::size_t i = 1; i < radii.size(); ++i)
    CHECK(radii[i] > radii[i - 1]);
  for (int j = 1; j <= 40; ++j) {
    const double rung = 1.0 - std::exp2(-j);
    CHECK(std::find(radii.begin(), radii.end(), rung) != radii.end());
  }
  CHECK(g.gap(g.ring_count() - 1) == std::exp2(-40.0));
  CHECK(g.angle_count() == 512);

  CHECK_THROWS_AS(DiskGrid(GridParams{60, 32, 40, 2}), std::invalid_argument);
  CHECK_THROWS_AS(DiskGrid(GridParams{60, 512, 40, -1}), std::invalid_argument);
}

TEST_CASE("weighted_sup_norm") {
  const auto& g = default_grid();
  SUBCASE("constant under a standard weight peaks at the origin") {
    const auto s = weighted_sup_norm([](complex) { return complex(1.0); }, Weight::standard(2.0), g);
    CHECK(s.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(s.argmax) < 1e-12);
  }
  SUBCASE("z^2 under v_1") {
    const auto s = weighted_sup_norm([](complex z) { return z * z; }, Weight::standard(1.0), g);
    // max of x(1-x) over x = r^2
    CHECK(s.value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(s.argmax) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-5));
    CHECK(s.refined);
    CHECK(std::abs(s.argmax) <= s.r_max_used);
  }
  SUBCASE("z under v_log") {
    const double oracle = dense_radial_max(
        [](double r) { return r / std::log(2.0 / (1.0 - r * r)); }, 0.0, 0.999);
    CHECK(oracle == doctest::Approx(0.526597007540253558).epsilon(1e-12));
    const auto s = weighted_sup_norm([](complex z) { return z; }, Weight::logarithmic(), g);
    CHECK(s.value == doctest::Approx(oracle).epsilon(1e-10));
  }
  SUBCASE("non-finite values are reported") {
    CHECK_THROWS_AS(weighted_sup_norm([](complex) { return complex(NAN, 0.0); },
                                      Weight::standard(1.0), g),
                    std::runtime_error);
  }
}

TEST_CASE("monomial_norm") {
  CHECK(monomial_norm(0, Weight::standard(0.7)) == 1.0);
  CHECK(monomial_norm(2, Weight::standard(1.0)) == doctest::Approx(0.25).epsilon(1e-15));

  SUBCASE("closed form agrees with the grid estimate") {
    const auto& g = default_grid();
    for (double a : {0.5, 1.0, 2.0})
      for (std::size_t n : {1u, 5u, 17u, 64u}) {
        const auto v = Weight::standard(a);
        const auto s = weighted_sup_norm(
            [n](complex z) { return std::pow(z, static_cast<int>(n)); }, v, g);
        CHECK(std::abs(s.value - monomial_norm(n, v)) < 1e-8);
      }
  }

  SUBCASE("standard-weight asymptotics") {
    for (double a : {0.5, 1.0, 2.0}) {
      const double limit = std::pow(2.0 * a / std::exp(1.0), a);
      const double at = std::pow(1e4 + 1.0, a) * monomial_norm(10000, Weight::standard(a));
      CHECK(std::abs(at / limit - 1.0) < 0.01);
      // the error shrinks steadily
      double prev = INFINITY;
      for (std::size_t n = 100; n <= 100000; n *= 10) {
        const double cur =
            std::abs(std::pow(n + 1.0, a) * monomial_norm(n, Weight::standard(a)) - limit);
        CHECK(cur < prev);
        prev = cur;
      }
    }
  }

  SUBCASE("logarithmic weight matches a high-precision oracle") {
    // Frozen from an independent 40-digit root solve of the stationarity
    // condition in log(1 - r^2).
    const std::pair<std::size_t, double> table[] = {{1, 0.52659700754025356},
                                                    {2, 0.37336461770167408},
                                                    {10, 0.20979227819744838},
                                                    {1000, 0.098279844404251988},
                                                    {1000000, 0.056634141769675428}};
    for (const auto& [n, expected] : table)
      CHECK(monomial_norm(n, Weight::logarithmic()) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(monomial_norm(0, Weight::logarithmic()) == doctest::Approx(1.0 / std::log(2.0)));
  }
}

TEST_CASE("bloch_norm") {
  const auto& g = default_grid();
  CHECK(bloch_norm(TruncatedSeries({0.0, 1.0}), 1.0, g) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bloch_norm(TruncatedSeries({complex(3.0, 4.0)}), 1.0, g) == doctest::Approx(5.0));
  CHECK(bloch_norm(TruncatedSeries({0.0, 0.0, 1.0}), 1.0, g) ==
        doctest::Approx(4.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-12));
}

TEST_CASE("zygmund_norm") {
  const auto& g = default_grid();
  CHECK(zygmund_norm(TruncatedSeries({complex(1.0, 1.0), -2.0}), 1.0, g) ==
        doctest::Approx(std::sqrt(2.0) + 2.0));
  CHECK(zygmund_norm(TruncatedSeries({0.0, 0.0, 1.0}), 1.0, g) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(zygmund_norm(TruncatedSeries({0.0, 0.0, 0.0, 1.0}), 1.0, g) ==
        doctest::Approx(4.0 / std::sqrt(3.0)).epsilon(1e-12));

  std::mt19937_64 rng(21);
  SUBCASE("homogeneity") {
    for (int t = 0; t < 5; ++t) {
      const auto f = random_poly(rng, 12);
      const complex c(-1.7, 0.4);
      CHECK(std::abs(zygmund_norm(c * f, 1.5, g) - std::abs(c) * zygmund_norm(f, 1.5, g)) <
            1e-10 * zygmund_norm(f, 1.5, g));
    }
  }
  SUBCASE("triangle inequality") {
    for (int t = 0; t < 10; ++t) {
      const auto f = random_poly(rng, 10);
      const auto h = random_poly(rng, 14);
      const double a = 0.5 + 0.25 * t;
      CHECK(zygmund_norm(f + h, a, g) <= zygmund_norm(f, a, g) + zygmund_norm(h, a, g) + 1e-9);
    }
  }
}

TEST_CASE("growth_bound_check") {
  const auto& g = default_grid();
  SUBCASE("z^2 with alpha = 1/2") {
    const auto rep = growth_bound_check(TruncatedSeries({0.0, 0.0, 1.0}), 0.5, g);
    REQUIRE(rep.clauses.size() == 6);
    CHECK(rep.clauses[0].applicable);
    CHECK(rep.clauses[0].holds);
    for (const auto& ineq : rep.clauses[0].inequalities)
      CHECK(ineq.worst_ratio <= 1.0);
    for (std::size_t c = 1; c < 6; ++c)
      CHECK_FALSE(rep.clauses[c].applicable);
  }
  SUBCASE("constants satisfy every applicable clause") {
    for (double a : {0.25, 1.0, 1.5, 2.0, 3.0}) {
      const auto rep = growth_bound_check(TruncatedSeries({complex(0.3, -0.2)}), a, g);
      CHECK(rep.all_hold);
    }
  }
  SUBCASE("random degree-20 polynomials, alpha = 3/2") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 10; ++t) {
      const auto rep = growth_bound_check(random_poly(rng, 20), 1.5, g);
      CHECK(rep.clauses[2].applicable);
      CHECK(rep.clauses[3].applicable);
      CHECK(rep.clauses[2].holds);
      CHECK(rep.clauses[3].holds);
    }
  }
  SUBCASE("alpha = 1 reports the observed constant of the |f| bound") {
    const auto rep = growth_bound_check(TruncatedSeries({1.0, 1.0}), 1.0, g);
    const auto& ineq = rep.clauses[1].inequalities[1];
    CHECK(ineq.best_constant <= 1.0);
    CHECK(ineq.best_constant > 0.99);
  }
  CHECK_THROWS_AS(growth_bound_check(TruncatedSeries{}, 1.0, g), std::invalid_argument);
}
