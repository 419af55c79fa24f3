#include "zygmund/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zygmund {

namespace {

constexpr double kDomainSlack = 1e-12;

void trim(std::vector<complex>& c) {
  while (c.size() > 1 && c.back() == complex{})
    c.pop_back();
  if (c.empty())
    c.push_back(complex{});
}

void check_domain(complex z) {
  if (std::abs(z) > 1.0 + kDomainSlack)
    throw std::domain_error("series evaluated outside the closed unit disk");
}

// Full convolution split into kept part [0, n_work] and the l1 mass of the rest.
std::vector<complex> convolve(std::span<const complex> a, std::span<const complex> b,
                              std::size_t n_work, double& dropped) {
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t kept = std::min(full, n_work + 1);
  std::vector<complex> out(kept);
  dropped = 0.0;
  for (std::size_t k = 0; k < full; ++k) {
    const std::size_t i_lo = k >= b.size() ? k - b.size() + 1 : 0;
    const std::size_t i_hi = std::min(k, a.size() - 1);
    complex acc{};
    for (std::size_t i = i_lo; i <= i_hi; ++i)
      acc += a[i] * b[k - i];
    if (k < kept)
      out[k] = acc;
    else
      dropped += std::abs(acc);
  }
  return out;
}

} // namespace

TruncatedSeries::TruncatedSeries() : coeffs_{complex{}} {}

TruncatedSeries::TruncatedSeries(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("series coefficient is not finite");
  }
  trim(coeffs_);
}

TruncatedSeries::TruncatedSeries(std::initializer_list<complex> coeffs)
    : TruncatedSeries(std::vector<complex>(coeffs)) {}

TruncatedSeries TruncatedSeries::constant(complex c) { return TruncatedSeries({c}); }

TruncatedSeries TruncatedSeries::monomial(std::size_t n, complex c) {
  std::vector<complex> v(n + 1);
  v[n] = c;
  return TruncatedSeries(std::move(v));
}

double TruncatedSeries::l1_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_)
    s += std::abs(c);
  return s;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  std::vector<complex> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = a[k] + b[k];
  return TruncatedSeries(std::move(out));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a + complex(-1.0) * b;
}

TruncatedSeries operator*(complex c, const TruncatedSeries& a) {
  std::vector<complex> out(a.coeffs_);
  for (auto& x : out)
    x *= c;
  return TruncatedSeries(std::move(out));
}

complex eval(const TruncatedSeries& s, complex z) {
  check_domain(z);
  const auto c = s.coeffs();
  complex acc{};
  for (std::size_t k = c.size(); k-- > 0;)
    acc = acc * z + c[k];
  return acc;
}

Jet eval_jet(const TruncatedSeries& s, complex z) {
  check_domain(z);
  const auto c = s.coeffs();
  complex p{}, d1{}, d2{};
  for (std::size_t k = c.size(); k-- > 0;) {
    d2 = d2 * z + d1;
    d1 = d1 * z + p;
    p = p * z + c[k];
  }
  return {p, d1, 2.0 * d2};
}

TruncatedSeries derivative(const TruncatedSeries& s) {
  const auto c = s.coeffs();
  if (c.size() == 1)
    return TruncatedSeries{};
  std::vector<complex> out(c.size() - 1);
  for (std::size_t k = 0; k + 1 < c.size(); ++k)
    out[k] = static_cast<double>(k + 1) * c[k + 1];
  return TruncatedSeries(std::move(out));
}

TruncatedSeries integrate_from_zero(const TruncatedSeries& s) {
  const auto c = s.coeffs();
  std::vector<complex> out(c.size() + 1);
  for (std::size_t k = 0; k < c.size(); ++k)
    out[k + 1] = c[k] / static_cast<double>(k + 1);
  return TruncatedSeries(std::move(out));
}

Truncated multiply_bounded(const TruncatedSeries& a, const TruncatedSeries& b,
                           std::size_t n_work) {
  double dropped = 0.0;
  auto out = convolve(a.coeffs(), b.coeffs(), n_work, dropped);
  return {TruncatedSeries(std::move(out)), dropped};
}

TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b,
                         std::size_t n_work) {
  return multiply_bounded(a, b, n_work).series;
}

Truncated compose_bounded(const TruncatedSeries& f, const TruncatedSeries& phi,
                          std::size_t n_work) {
  // Horner in phi: acc <- acc * phi + c_k.  An error e carried into a step is
  // amplified by at most ||phi||_l1 on the closed disk.
  const auto c = f.coeffs();
  const double amp = phi.l1_norm();
  std::vector<complex> acc{c.back()};
  double err = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    double dropped = 0.0;
    acc = convolve(acc, phi.coeffs(), n_work, dropped);
    acc[0] += c[k];
    err = err * amp + dropped;
  }
  return {TruncatedSeries(std::move(acc)), err};
}

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& phi,
                        std::size_t n_work) {
  return compose_bounded(f, phi, n_work).series;
}

Truncated integer_power_bounded(const TruncatedSeries& phi, std::size_t n,
                                std::size_t n_work) {
  // (A + ea)(B + eb) = AB + A eb + B ea + ea eb, each sup bounded by l1 norms.
  auto mul = [n_work](const Truncated& x, const Truncated& y) {
    auto p = multiply_bounded(x.series, y.series, n_work);
    p.tail_bound += x.series.l1_norm() * y.tail_bound + y.series.l1_norm() * x.tail_bound +
                    x.tail_bound * y.tail_bound;
    return p;
  };
  Truncated result{TruncatedSeries::constant(1.0), 0.0};
  Truncated base{phi, 0.0};
  while (n > 0) {
    if (n & 1u)
      result = mul(result, base);
    n >>= 1u;
    if (n > 0)
      base = mul(base, base);
  }
  return result;
}

TruncatedSeries integer_power(const TruncatedSeries& phi, std::size_t n, std::size_t n_work) {
  return integer_power_bounded(phi, n, n_work).series;
}

} // namespace zygmund
