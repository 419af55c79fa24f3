#include "zygmund/spaces.hpp"

#include "zygmund/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace zygmund {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kRefineCandidates = 4;

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

} // namespace

DiskPoint DiskPoint::polar(double r, double theta) {
  return {std::polar(r, theta), r, 1.0 - r};
}

DiskPoint DiskPoint::from_gap(double one_minus_r, double theta) {
  const double r = 1.0 - one_minus_r;
  return {std::polar(r, theta), r, one_minus_r};
}

Weight Weight::standard(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("standard weight needs alpha > 0");
  return Weight(false, alpha);
}

Weight Weight::logarithmic() { return Weight(true, 0.0); }

double Weight::of_gap(double x) const {
  if (log_)
    return 1.0 / std::log(2.0 / x);
  return std::pow(x, alpha_);
}

std::string Weight::label() const {
  if (log_)
    return "v_log";
  std::ostringstream os;
  os << "v_" << alpha_;
  return os.str();
}

DiskGrid::DiskGrid(GridParams params) : params_(params) {
  if (params.angles < 64)
    throw std::invalid_argument("grid needs at least 64 angles");
  if (params.refine_depth < 0)
    throw std::invalid_argument("refinement depth must be non-negative");
  if (params.j_max < 1 || params.j_max > 50)
    throw std::invalid_argument("j_max must lie in [1, 50]");
  if (params.radii_count < 2)
    throw std::invalid_argument("grid needs at least two radii");

  const int substeps = std::max(1, (params.radii_count + params.j_max - 1) / params.j_max);
  std::vector<std::pair<double, double>> rings;  // (r, 1 - r)
  for (int k = 0; k <= substeps * params.j_max; ++k) {
    const double gap = std::exp2(-static_cast<double>(k) / substeps);
    rings.emplace_back(1.0 - gap, gap);
  }
  const int interior = params.radii_count / 3;
  for (int i = 1; i < interior; ++i) {
    const double r = 0.5 * i / interior;
    rings.emplace_back(r, 1.0 - r);
  }
  // Order by decreasing gap; near the boundary radii are indistinguishable in
  // double precision, so duplicates are judged on the gap.
  std::sort(rings.begin(), rings.end(),
            [](const auto& a, const auto& b) { return a.second > b.second; });
  for (const auto& [r, gap] : rings) {
    if (!gaps_.empty() && gaps_.back() - gap < 1e-9 * gaps_.back())
      continue;
    radii_.push_back(r);
    gaps_.push_back(gap);
  }

  const auto m_count = static_cast<std::size_t>(params.angles);
  cos_.resize(m_count);
  sin_.resize(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    cos_[m] = std::cos(angle(m));
    sin_[m] = std::sin(angle(m));
  }
}

double DiskGrid::angle(std::size_t m) const {
  return kTwoPi * static_cast<double>(m) / params_.angles;
}

DiskPoint DiskGrid::point(std::size_t ring, std::size_t m) const {
  const double r = radii_[ring];
  return {complex(r * cos_[m], r * sin_[m]), r, gaps_[ring]};
}

DiskPoint DiskGrid::point(std::size_t index) const {
  return point(index / angle_count(), index % angle_count());
}

std::vector<double> sample_grid(const PointFunction& h, const DiskGrid& grid) {
  std::vector<double> out(grid.size());
  parallel_for(out.size(), [&](std::size_t i) { out[i] = h(grid.point(i)); });
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out[i])) {
      std::ostringstream os;
      os << "non-finite value " << out[i] << " at z = " << grid.point(i).z;
      throw std::runtime_error(os.str());
    }
  }
  return out;
}

LineMax golden_section_max(const std::function<double(double)>& h, double lo, double hi,
                           int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  LineMax best{lo, h(lo)};
  if (const double v = h(hi); v > best.value)
    best = {hi, v};
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = h(c), fd = h(d);
  const double min_width = 1e-13 * (hi - lo);
  for (int it = 0; it < iterations && (b - a) > min_width &&
                   (b - a) > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a);
       ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = h(d);
    }
  }
  if (fc > best.value)
    best = {c, fc};
  if (fd > best.value)
    best = {d, fd};
  return best;
}

std::vector<double> ring_maxima(std::span<const double> values, const DiskGrid& grid) {
  std::vector<double> out(grid.ring_count(), 0.0);
  const std::size_t m_count = grid.angle_count();
  for (std::size_t i = 0; i < grid.ring_count(); ++i)
    out[i] = *std::max_element(values.begin() + i * m_count, values.begin() + (i + 1) * m_count);
  return out;
}

SupEstimate refine_sup(std::span<const double> coarse, const PointFunction& h,
                       const DiskGrid& grid) {
  if (coarse.size() != grid.size())
    throw std::invalid_argument("sample count does not match grid");
  const std::size_t rings = grid.ring_count();
  const std::size_t m_count = grid.angle_count();

  // Local maxima of the coarse samples, best first.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < rings; ++i) {
    for (std::size_t m = 0; m < m_count; ++m) {
      const double v = coarse[i * m_count + m];
      const bool up = i + 1 == rings || coarse[(i + 1) * m_count + m] <= v;
      const bool down = i == 0 || coarse[(i - 1) * m_count + m] <= v;
      const bool left = coarse[i * m_count + (m + m_count - 1) % m_count] <= v;
      const bool right = coarse[i * m_count + (m + 1) % m_count] <= v;
      if (up && down && left && right)
        candidates.push_back(i * m_count + m);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return coarse[a] > coarse[b]; });
  if (candidates.size() > kRefineCandidates)
    candidates.resize(kRefineCandidates);

  const std::size_t top = static_cast<std::size_t>(
      std::max_element(coarse.begin(), coarse.end()) - coarse.begin());
  SupEstimate best{coarse[top], grid.point(top).z, grid.r_max(), false};
  const int depth = grid.params().refine_depth;
  if (depth == 0)
    return best;
  best.refined = true;

  const double dtheta = kTwoPi / static_cast<double>(m_count);
  for (const std::size_t idx : candidates) {
    const std::size_t ring = idx / m_count;
    double gap = grid.gap(ring);
    double theta = grid.angle(idx % m_count);
    double value = coarse[idx];
    const double gap_hi = ring == 0 ? 1.0 : grid.gap(ring - 1);
    const double gap_lo = ring + 1 == rings ? grid.gap(ring) : grid.gap(ring + 1);
    for (int pass = 0; pass < depth; ++pass) {
      const auto radial = golden_section_max(
          [&](double s) { return h(DiskPoint::from_gap(s, theta)); }, gap_lo, gap_hi);
      if (radial.value > value) {
        value = radial.value;
        gap = radial.x;
      }
      if (gap >= 1.0)
        break;  // at the origin the angle is irrelevant
      const auto angular = golden_section_max(
          [&](double t) { return h(DiskPoint::from_gap(gap, t)); }, theta - dtheta,
          theta + dtheta);
      if (angular.value > value) {
        value = angular.value;
        theta = angular.x;
      }
    }
    if (!std::isfinite(value))
      throw std::runtime_error("non-finite value during refinement");
    if (value > best.value) {
      best.value = value;
      best.argmax = DiskPoint::from_gap(gap, theta).z;
    }
  }
  return best;
}

SupEstimate grid_sup(const PointFunction& h, const DiskGrid& grid) {
  const auto coarse = sample_grid(h, grid);
  return refine_sup(coarse, h, grid);
}

SupEstimate weighted_sup_norm(const std::function<complex(complex)>& f, const Weight& v,
                              const DiskGrid& grid) {
  return grid_sup([&](const DiskPoint& p) { return v(p) * std::abs(f(p.z)); }, grid);
}

double monomial_norm(std::size_t n, const Weight& v) {
  const double nd = static_cast<double>(n);
  if (!v.is_logarithmic()) {
    if (n == 0)
      return 1.0;
    const double a = v.alpha();
    // maximizer r^2 = n / (n + 2a)
    return std::exp(-0.5 * nd * std::log1p(2.0 * a / nd) + a * (std::log(2.0 * a) - std::log(nd + 2.0 * a)));
  }
  const double log2 = std::log(2.0);
  if (n == 0)
    return 1.0 / log2;
  // Search over y = log(1 - r^2) so the maximizer, which approaches the
  // boundary like 2 / (n log n), stays resolvable.
  const auto objective = [&](double y) {
    const double x = std::exp(y);
    return 0.5 * nd * std::log1p(-x) - std::log(log2 - y);
  };
  const auto best = golden_section_max(objective, -700.0, 0.0, 400);
  return std::exp(best.value);
}

double bloch_norm(const TruncatedSeries& f, double alpha, const DiskGrid& grid) {
  const auto df = derivative(f);
  const auto v = Weight::standard(alpha);
  const auto sup = weighted_sup_norm([&](complex z) { return eval(df, z); }, v, grid);
  return std::abs(f[0]) + sup.value;
}

double zygmund_norm(complex f0, complex f1, const std::function<complex(complex)>& f2,
                    double alpha, const DiskGrid& grid) {
  const auto v = Weight::standard(alpha);
  return std::abs(f0) + std::abs(f1) + weighted_sup_norm(f2, v, grid).value;
}

double zygmund_norm(const TruncatedSeries& f, double alpha, const DiskGrid& grid) {
  const auto d2 = derivative(derivative(f));
  return zygmund_norm(f[0], f[1], [&](complex z) { return eval(d2, z); }, alpha, grid);
}

GrowthReport growth_bound_check(const TruncatedSeries& f, double alpha, const DiskGrid& grid) {
  if (f.is_zero())
    throw std::invalid_argument("growth check needs a nonzero function");
  GrowthReport report;
  report.alpha = alpha;
  report.norm = zygmund_norm(f, alpha, grid);
  const double a = alpha;
  const double norm = report.norm;

  // Each inequality: lhs(jet) <= constant * shape(point) * ||f||.
  struct Spec {
    int clause;
    std::string bound;
    double constant;
    bool derivative;  // bounds |f'| when true, |f| otherwise
    std::function<double(const DiskPoint&)> shape;
  };
  const auto one = [](const DiskPoint&) { return 1.0; };
  const auto log_shape = [](const DiskPoint& p) { return std::log(2.0 / p.one_minus_r); };
  std::vector<Spec> specs{
      {0, "|f'(z)| <= C ||f||", 2.0 / (1.0 - a), true, one},
      {0, "|f(z)| <= C ||f||", 2.0 / (1.0 - a), false, one},
      {1, "|f'(z)| <= C log(2/(1-|z|)) ||f||", 2.0, true, log_shape},
      {1, "|f(z)| <= C ||f||", 1.0, false, one},
      {2, "|f'(z)| <= C ||f|| / (1-|z|)^(alpha-1)", 2.0 / (a - 1.0), true,
       [a](const DiskPoint& p) { return std::pow(p.one_minus_r, 1.0 - a); }},
      {3, "|f(z)| <= C ||f||", 2.0 / ((a - 1.0) * (2.0 - a)), false, one},
      {4, "|f(z)| <= C log(2/(1-|z|)) ||f||", 2.0, false, log_shape},
      {5, "|f(z)| <= C ||f|| / (1-|z|)^(alpha-2)", 2.0 / ((a - 1.0) * (a - 2.0)), false,
       [a](const DiskPoint& p) { return std::pow(p.one_minus_r, 2.0 - a); }},
  };
  const bool applicable[6] = {a < 1.0 && !near(a, 1.0), near(a, 1.0), a > 1.0 && !near(a, 1.0),
                              a > 1.0 && a < 2.0 && !near(a, 1.0) && !near(a, 2.0),
                              near(a, 2.0), a > 2.0 && !near(a, 2.0)};
  static const char* names[6] = {"i", "ii", "iii", "iv", "v", "vi"};

  for (int c = 0; c < 6; ++c) {
    GrowthClause clause;
    clause.name = names[c];
    clause.applicable = applicable[c];
    report.clauses.push_back(std::move(clause));
  }

  std::vector<Jet> jets(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { jets[i] = eval_jet(f, grid.point(i).z); });

  for (const auto& s : specs) {
    auto& clause = report.clauses[static_cast<std::size_t>(s.clause)];
    if (!clause.applicable)
      continue;
    GrowthInequality ineq;
    ineq.bound = s.bound;
    ineq.constant = s.constant;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto p = grid.point(i);
      const double lhs = std::abs(s.derivative ? jets[i].d1 : jets[i].value);
      const double rhs = s.constant * s.shape(p) * norm;
      ineq.worst_ratio = std::max(ineq.worst_ratio, lhs / rhs);
    }
    ineq.best_constant = ineq.worst_ratio * s.constant;
    ineq.holds = ineq.worst_ratio <= 1.0;
    clause.holds = clause.holds && ineq.holds;
    clause.inequalities.push_back(std::move(ineq));
  }
  for (const auto& c : report.clauses)
    report.all_hold = report.all_hold && c.holds;
  return report;
}

} // namespace zygmund
