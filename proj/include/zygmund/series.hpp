// Truncated power series on the closed unit disk.
//
// A TruncatedSeries holds the coefficients c_0..c_N of a polynomial that stands
// in for an analytic function on D.  All operations that could raise the
// degree past the working degree truncate and report an upper bound for the
// discarded part (measured as a sup over the closed unit disk).

#ifndef ZYGMUND_SERIES_HPP
#define ZYGMUND_SERIES_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace zygmund {

using complex = std::complex<double>;

inline constexpr std::size_t kDefaultWorkDegree = 512;

class TruncatedSeries {
public:
  TruncatedSeries();
  explicit TruncatedSeries(std::vector<complex> coeffs);
  TruncatedSeries(std::initializer_list<complex> coeffs);

  static TruncatedSeries constant(complex c);
  static TruncatedSeries monomial(std::size_t n, complex c = 1.0);

  std::size_t degree() const { return coeffs_.size() - 1; }
  std::span<const complex> coeffs() const { return coeffs_; }
  // Coefficient of z^k; zero past the degree.
  complex operator[](std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : complex{};
  }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == complex{}; }

  // Sum of |c_k|: an upper bound for sup |f| on the closed disk.
  double l1_norm() const;

  bool operator==(const TruncatedSeries&) const = default;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(complex c, const TruncatedSeries& a);

private:
  std::vector<complex> coeffs_;
};

// Value plus first and second derivative at one point.
struct Jet {
  complex value;
  complex d1;
  complex d2;
};

// A series result together with a bound on sup_{|z|<=1} of the dropped tail.
struct Truncated {
  TruncatedSeries series;
  double tail_bound = 0.0;
};

// Horner evaluation.  Throws std::domain_error for |z| > 1 + 1e-12.
complex eval(const TruncatedSeries& s, complex z);
// Simultaneous Horner for f, f', f''.  Same domain rule as eval.
Jet eval_jet(const TruncatedSeries& s, complex z);

TruncatedSeries derivative(const TruncatedSeries& s);
TruncatedSeries integrate_from_zero(const TruncatedSeries& s);

// Cauchy product truncated at n_work.  Exact when deg(a)+deg(b) <= n_work.
Truncated multiply_bounded(const TruncatedSeries& a, const TruncatedSeries& b,
                           std::size_t n_work = kDefaultWorkDegree);
TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b,
                         std::size_t n_work = kDefaultWorkDegree);

// f o phi by Horner's scheme in phi, truncating every step at n_work.
Truncated compose_bounded(const TruncatedSeries& f, const TruncatedSeries& phi,
                          std::size_t n_work = kDefaultWorkDegree);
TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& phi,
                        std::size_t n_work = kDefaultWorkDegree);

// phi^n by repeated squaring.
Truncated integer_power_bounded(const TruncatedSeries& phi, std::size_t n,
                                std::size_t n_work = kDefaultWorkDegree);
TruncatedSeries integer_power(const TruncatedSeries& phi, std::size_t n,
                              std::size_t n_work = kDefaultWorkDegree);

} // namespace zygmund

#endif
