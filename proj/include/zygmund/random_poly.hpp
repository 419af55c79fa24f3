#ifndef ZYGMUND_RANDOM_POLY_HPP
#define ZYGMUND_RANDOM_POLY_HPP

#include "zygmund/series.hpp"

#include <random>

namespace zygmund {

// Random polynomial with standard complex normal coefficients.
inline TruncatedSeries random_poly(std::mt19937_64& rng, std::size_t degree, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<complex> c(degree + 1);
  for (auto& x : c)
    x = scale * complex(n(rng), n(rng));
  return TruncatedSeries(std::move(c));
}

// Random polynomial self-map with sum |c_k| = l1 < 1.
inline TruncatedSeries random_self_map(std::mt19937_64& rng, std::size_t degree, double l1 = 0.9) {
  auto p = random_poly(rng, degree);
  return (l1 / p.l1_norm()) * p;
}

} // namespace zygmund

#endif
