// Weights, disk sampling and the weighted sup-norms built on them.

#ifndef ZYGMUND_SPACES_HPP
#define ZYGMUND_SPACES_HPP

#include "zygmund/series.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace zygmund {

// A point of D together with an accurately known distance to the boundary.
// Near |z| = 1 the value 1 - |z|^2 cannot be recovered from z itself, so the
// grid carries 1 - r exactly.
struct DiskPoint {
  complex z;
  double r = 0.0;
  double one_minus_r = 1.0;

  double one_minus_r2() const { return one_minus_r * (1.0 + r); }
  static DiskPoint polar(double r, double theta);
  static DiskPoint from_gap(double one_minus_r, double theta);
};

// Radial weight on D: standard (1-|z|^2)^alpha or logarithmic
// 1 / log(2 / (1-|z|^2)).  Both are their own associated weights.
class Weight {
public:
  static Weight standard(double alpha);
  static Weight logarithmic();

  bool is_logarithmic() const { return log_; }
  double alpha() const { return alpha_; }

  // Weight as a function of x = 1 - |z|^2 in (0, 1].
  double of_gap(double one_minus_abs2) const;
  double operator()(const DiskPoint& p) const { return of_gap(p.one_minus_r2()); }
  double operator()(complex z) const { return of_gap(1.0 - std::norm(z)); }

  std::string label() const;

private:
  Weight(bool log, double alpha) : log_(log), alpha_(alpha) {}
  bool log_;
  double alpha_;
};

struct GridParams {
  int radii_count = 60;
  int angles = 512;
  int j_max = 40;
  int refine_depth = 2;
};

// Polar sampling of the disk.  Radii combine a geometric boundary ladder
// 1 - r = 2^{-t} (t stepping through [0, j_max], integer rungs included) with
// uniform radii in [0, 1/2].  Points are indexed ring-major: i_r * angles + m.
class DiskGrid {
public:
  explicit DiskGrid(GridParams params = {});

  const GridParams& params() const { return params_; }
  std::size_t ring_count() const { return radii_.size(); }
  std::size_t angle_count() const { return static_cast<std::size_t>(params_.angles); }
  std::size_t size() const { return ring_count() * angle_count(); }

  std::span<const double> radii() const { return radii_; }
  double radius(std::size_t ring) const { return radii_[ring]; }
  double gap(std::size_t ring) const { return gaps_[ring]; }
  double r_max() const { return radii_.back(); }
  double angle(std::size_t m) const;

  DiskPoint point(std::size_t index) const;
  DiskPoint point(std::size_t ring, std::size_t m) const;

private:
  GridParams params_;
  std::vector<double> radii_;
  std::vector<double> gaps_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

struct SupEstimate {
  double value = 0.0;
  complex argmax{};
  double r_max_used = 0.0;
  bool refined = false;
};

using PointFunction = std::function<double(const DiskPoint&)>;

// Evaluates h at every grid point.  Throws std::runtime_error on a non-finite
// value.
std::vector<double> sample_grid(const PointFunction& h, const DiskGrid& grid);

// Coarse maximum over pre-sampled values followed by golden-section polishing
// (in r along the ray, then in theta) around the best few local maxima.
SupEstimate refine_sup(std::span<const double> coarse, const PointFunction& h,
                       const DiskGrid& grid);
SupEstimate grid_sup(const PointFunction& h, const DiskGrid& grid);

// Largest sampled value on each ring.
std::vector<double> ring_maxima(std::span<const double> values, const DiskGrid& grid);

// Maximizes a function of one variable on [lo, hi]; returns {x, value}.
struct LineMax {
  double x;
  double value;
};
LineMax golden_section_max(const std::function<double(double)>& h, double lo, double hi,
                           int iterations = 200);

SupEstimate weighted_sup_norm(const std::function<complex(complex)>& f, const Weight& v,
                              const DiskGrid& grid);

// ||z^n||_v.  Closed form for standard weights, 1-D golden-section search on
// (0, 1) for the logarithmic weight (no grid cap).
double monomial_norm(std::size_t n, const Weight& v);

double bloch_norm(const TruncatedSeries& f, double alpha, const DiskGrid& grid);
double zygmund_norm(const TruncatedSeries& f, double alpha, const DiskGrid& grid);
// Zygmund norm from pointwise data: f(0), f'(0) and a second-derivative oracle.
double zygmund_norm(complex f0, complex f1, const std::function<complex(complex)>& f2,
                    double alpha, const DiskGrid& grid);

// One inequality of the growth bounds, checked over every grid point.
struct GrowthInequality {
  std::string bound;       // e.g. "|f'(z)| <= C ||f|| / (1-|z|)^(a-1)"
  double constant = 0.0;   // the printed constant C
  double worst_ratio = 0.0;  // max over the grid of lhs / rhs
  double best_constant = 0.0;  // smallest C that would still hold: worst_ratio * C
  bool holds = true;
};

struct GrowthClause {
  std::string name;  // "i" .. "vi"
  bool applicable = false;
  bool holds = true;
  std::vector<GrowthInequality> inequalities;
};

struct GrowthReport {
  double alpha = 0.0;
  double norm = 0.0;
  std::vector<GrowthClause> clauses;  // always six, in order
  bool all_hold = true;
};

GrowthReport growth_bound_check(const TruncatedSeries& f, double alpha, const DiskGrid& grid);

} // namespace zygmund

#endif
