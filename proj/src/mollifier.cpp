#include "hweyl/mollifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hweyl/error.hpp"
#include "hweyl/quadrature.hpp"
#include "hweyl/summation.hpp"

namespace hweyl {

struct BumpProfile::Tables {
  double normalization = 0.0;
  double quad_tolerance = 0.0;
  double quad_error = 0.0;
  // composite rule on [0, 1]
  std::vector<double> nodes;
  std::vector<double> weights;
  double ft_step = 0.0;
  double ft_range = 0.0;
  std::vector<double> ft_value;
  std::vector<double> ft_slope;
  double cdf_step = 0.0;
  std::vector<double> cdf_value;
  std::vector<double> cdf_slope;
};

namespace {

/// exp(-1/(1 - x²)) without normalization.
double raw_bump(double x) {
  const double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  return std::exp(-1.0 / ((1.0 - ax) * (1.0 + ax)));
}

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule composite_rule(std::size_t panels) {
  static const GaussLegendreRule base = gauss_legendre(16);
  Rule rule;
  rule.nodes.reserve(panels * base.nodes.size());
  rule.weights.reserve(panels * base.nodes.size());
  const double h = 1.0 / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      rule.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      rule.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return rule;
}

/// 2∫₀¹ e(x) cos(2πξx) dx and its ξ-derivative, unnormalized.
std::array<double, 2> raw_transform(const std::vector<double>& nodes,
                                    const std::vector<double>& weights, double xi) {
  CompensatedSum value;
  CompensatedSum slope;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double x = nodes[i];
    const double we = weights[i] * raw_bump(x);
    if (we == 0.0) continue;
    const double phase = kTwoPi * xi * x;
    value += we * std::cos(phase);
    slope += -we * kTwoPi * x * std::sin(phase);
  }
  return {2.0 * value.value(), 2.0 * slope.value()};
}

double hermite(double f0, double d0, double f1, double d1, double h, double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * f0 + (s3 - 2.0 * s2 + s) * h * d0 +
         (-2.0 * s3 + 3.0 * s2) * f1 + (s3 - s2) * h * d1;
}

}  // namespace

BumpProfile BumpProfile::build(double quad_tolerance) {
  Options options;
  options.quad_tolerance = quad_tolerance;
  return build(options);
}

BumpProfile BumpProfile::build(const Options& options) {
  if (!(options.quad_tolerance > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "quad_tolerance must be positive");
  }
  if (!(options.ft_step > 0.0) || !(options.ft_range > options.ft_step) ||
      !(options.cdf_step > 0.0) || options.cdf_step > 0.5) {
    throw Error(ErrorKind::InvalidArgument, "bad bump table geometry");
  }
  auto tables = std::make_shared<Tables>();
  tables->quad_tolerance = options.quad_tolerance;

  // Double the panel count until value and slope settle at a few probe
  // frequencies, the top of the table included.
  const std::array<double, 5> probes{0.0, 1.0, options.ft_range / 4.0, options.ft_range / 2.0,
                                     options.ft_range};
  std::size_t panels = 4;
  Rule coarse = composite_rule(panels);
  double diff = 0.0;
  for (;;) {
    Rule fine = composite_rule(2 * panels);
    if (fine.nodes.size() > options.max_nodes) {
      throw Error(ErrorKind::QuadratureFailure,
                  "bump transform did not reach tolerance " +
                      std::to_string(options.quad_tolerance) + " within " +
                      std::to_string(options.max_nodes) + " nodes (last difference " +
                      std::to_string(diff) + ")");
    }
    const double scale = 1.0 / raw_transform(fine.nodes, fine.weights, 0.0)[0];
    diff = 0.0;
    for (const double xi : probes) {
      const auto a = raw_transform(coarse.nodes, coarse.weights, xi);
      const auto b = raw_transform(fine.nodes, fine.weights, xi);
      diff = std::max(diff, scale * std::abs(a[0] - b[0]));
      diff = std::max(diff, scale * std::abs(a[1] - b[1]) / (kTwoPi * options.ft_range));
    }
    panels *= 2;
    coarse = std::move(fine);
    if (diff <= options.quad_tolerance) break;
  }
  tables->nodes = std::move(coarse.nodes);
  tables->weights = std::move(coarse.weights);
  tables->quad_error = diff;

  const double raw_mass = raw_transform(tables->nodes, tables->weights, 0.0)[0];
  tables->normalization = 1.0 / raw_mass;

  tables->ft_step = options.ft_step;
  const auto ft_points = static_cast<std::size_t>(std::ceil(options.ft_range / options.ft_step));
  tables->ft_range = static_cast<double>(ft_points) * options.ft_step;
  tables->ft_value.resize(ft_points + 1);
  tables->ft_slope.resize(ft_points + 1);
  for (std::size_t j = 0; j <= ft_points; ++j) {
    const auto r =
        raw_transform(tables->nodes, tables->weights, static_cast<double>(j) * options.ft_step);
    tables->ft_value[j] = r[0] * tables->normalization;
    tables->ft_slope[j] = r[1] * tables->normalization;
  }
  tables->ft_value[0] = 1.0;
  tables->ft_slope[0] = 0.0;

  // Φ on a uniform grid over [-1, 0], mirrored; Φ(0) = 1/2 exactly.
  const auto half = static_cast<std::size_t>(std::ceil(1.0 / options.cdf_step));
  const double h = 1.0 / static_cast<double>(half);
  tables->cdf_step = h;
  static const GaussLegendreRule cell = gauss_legendre(8);
  std::vector<double> raw(half + 1, 0.0);
  CompensatedSum running;
  for (std::size_t i = 0; i < half; ++i) {
    const double mid = -1.0 + (static_cast<double>(i) + 0.5) * h;
    double s = 0.0;
    for (std::size_t q = 0; q < cell.nodes.size(); ++q) {
      s += cell.weights[q] * raw_bump(mid + 0.5 * h * cell.nodes[q]);
    }
    running += 0.5 * h * s;
    raw[i + 1] = running.value();
  }
  const double total = 2.0 * raw[half];
  tables->cdf_value.resize(2 * half + 1);
  tables->cdf_slope.resize(2 * half + 1);
  for (std::size_t i = 0; i <= half; ++i) {
    const double phi = raw[i] / total;
    const double slope = raw_bump(-1.0 + static_cast<double>(i) * h) / total;
    tables->cdf_value[i] = phi;
    tables->cdf_slope[i] = slope;
    tables->cdf_value[2 * half - i] = 1.0 - phi;
    tables->cdf_slope[2 * half - i] = slope;
  }
  tables->cdf_value[half] = 0.5;

  return BumpProfile(std::move(tables), 1.0);
}

const BumpProfile& BumpProfile::standard() {
  static const BumpProfile profile = build(Options{});
  return profile;
}

BumpProfile BumpProfile::scaled(double epsilon) const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must be positive and finite");
  }
  return BumpProfile(tables_, epsilon);
}

double BumpProfile::normalization() const { return tables_->normalization; }
double BumpProfile::quad_tolerance() const { return tables_->quad_tolerance; }
double BumpProfile::quad_error() const { return tables_->quad_error; }
double BumpProfile::table_step() const { return tables_->ft_step; }
double BumpProfile::table_range() const { return tables_->ft_range; }

double BumpProfile::density(double x) const { return tables_->normalization * raw_bump(x); }

double BumpProfile::cdf(double x) const {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double h = tables_->cdf_step;
  const double pos = (x + 1.0) / h;
  const auto last = tables_->cdf_value.size() - 2;
  const auto i = std::min(static_cast<std::size_t>(pos), last);
  const double s = pos - static_cast<double>(i);
  const auto& v = tables_->cdf_value;
  const auto& d = tables_->cdf_slope;
  return std::clamp(hermite(v[i], d[i], v[i + 1], d[i + 1], h, s), 0.0, 1.0);
}

double BumpProfile::transform(double xi) const {
  const double a = std::abs(xi);
  if (a >= tables_->ft_range) return 0.0;
  const double h = tables_->ft_step;
  const double pos = a / h;
  const auto last = tables_->ft_value.size() - 2;
  const auto i = std::min(static_cast<std::size_t>(pos), last);
  const double s = pos - static_cast<double>(i);
  const auto& v = tables_->ft_value;
  const auto& d = tables_->ft_slope;
  return hermite(v[i], d[i], v[i + 1], d[i + 1], h, s);
}

double BumpProfile::transform_direct(double xi) const {
  return raw_transform(tables_->nodes, tables_->weights, xi)[0] * tables_->normalization;
}

double BumpProfile::transform_eps(double xi, double eta) const {
  return transform(epsilon_ * xi) * transform(epsilon_ * eta);
}

namespace {

double boundary_g(double x, double y) { return x * (x + 2.0 * y + 1.0); }

/// y on the curve x(x + 2y + 1) = t.
double boundary_y(double x, double t) { return 0.5 * (t / x - x - 1.0); }

/// x > 0 on the same curve, for y > -1/2.
double boundary_x(double y, double t) {
  const double b = 2.0 * y + 1.0;
  return 2.0 * t / (b + std::sqrt(b * b + 4.0 * t));
}

void check_profile(const BumpProfile& profile) {
  if (!(profile.epsilon() <= 0.25)) {
    throw Error(ErrorKind::InvalidArgument,
                "mollifier scale epsilon must be <= 1/4, got " + std::to_string(profile.epsilon()));
  }
}

double shell_integral(std::int64_t c, std::int64_t k, double t, const BumpProfile& profile) {
  const double eps = profile.epsilon();
  const auto cx = static_cast<double>(c);
  const auto ky = static_cast<double>(k);
  // Signed offset of the lattice point from the curve; the Φ arguments below
  // are written through it so that nothing of size 1 is subtracted and then
  // divided by ε.
  const double g0 = static_cast<double>(c * (c + 2 * k + 1)) - t;
  const double lead = g0 / eps;
  // Integrate one variable analytically through Φ and keep the remaining
  // integrand's slope <= 1 by picking the flatter direction.
  const double slope = 0.5 * (t / (cx * cx) + 1.0);
  std::function<double(double)> f;
  if (slope <= 1.0) {
    // (Y(c + εu) - k)/ε with Y(x) = (t/x - x - 1)/2
    f = [&, lead](double u) {
      const double w = profile.density(u);
      if (w == 0.0) return 0.0;
      const double x = cx + eps * u;
      const double g = lead + u * (2.0 * cx + 2.0 * ky + 1.0) + eps * u * u;
      return w * profile.cdf(-g / (2.0 * x));
    };
  } else {
    // (X(k + εv) - c)/ε with X the positive root of x² + (2y + 1)x = t
    f = [&, lead](double v) {
      const double w = profile.density(v);
      if (w == 0.0) return 0.0;
      const double y = ky + eps * v;
      const double g = lead + 2.0 * cx * v;
      return w * profile.cdf(-g / (boundary_x(y, t) + cx + 2.0 * y + 1.0));
    };
  }
  AdaptiveOptions options;
  options.abs_tol = profile.quad_tolerance();
  options.rel_tol = 0.0;
  options.max_intervals = 20000;
  const auto r = integrate_adaptive(f, -1.0, 1.0, options);
  if (!r.converged) {
    throw Error(ErrorKind::QuadratureFailure,
                "shell quadrature at (" + std::to_string(c) + ", " + std::to_string(k) +
                    ") did not converge, estimate " + std::to_string(r.error_estimate));
  }
  return std::clamp(r.value, 0.0, 1.0);
}

}  // namespace

MollifiedIndicator mollified_indicator(std::int64_t c, std::int64_t k, double t,
                                       const BumpProfile& profile) {
  check_profile(profile);
  if (c < 1 || k < 0) throw Error(ErrorKind::InvalidArgument, "lattice point needs c >= 1, k >= 0");
  const double eps = profile.epsilon();
  const auto cx = static_cast<double>(c);
  const auto ky = static_cast<double>(k);
  // The support square stays in x > 0, y > -1/2 where g is increasing in both
  // variables, so its corners decide containment.
  if (boundary_g(cx + eps, ky + eps) <= t) return {PointClass::Inside, 1.0};
  if (boundary_g(cx - eps, ky - eps) > t) return {PointClass::Outside, 0.0};
  return {PointClass::Shell, shell_integral(c, k, t, profile)};
}

double mollified_count_H(double t, const BumpProfile& profile) {
  check_profile(profile);
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::OutOfRange, "mollified count needs finite t >= 0");
  }
  const double eps = profile.epsilon();
  std::uint64_t sharp = 0;
  CompensatedSum shell;
  for (std::int64_t c = 1;; ++c) {
    const auto cx = static_cast<double>(c);
    if (boundary_g(cx - eps, -eps) > t) break;
    // Largest k whose square lies inside, and largest k whose square touches.
    auto k_in = static_cast<std::int64_t>(std::floor(boundary_y(cx + eps, t) - eps));
    k_in = std::max<std::int64_t>(k_in, -1);
    while (k_in >= 0 && boundary_g(cx + eps, static_cast<double>(k_in) + eps) > t) --k_in;
    while (boundary_g(cx + eps, static_cast<double>(k_in + 1) + eps) <= t) ++k_in;
    auto k_touch = static_cast<std::int64_t>(std::floor(boundary_y(cx - eps, t) + eps));
    k_touch = std::max(k_touch, k_in);
    while (k_touch > k_in && boundary_g(cx - eps, static_cast<double>(k_touch) - eps) > t) {
      --k_touch;
    }
    while (boundary_g(cx - eps, static_cast<double>(k_touch + 1) - eps) <= t) ++k_touch;

    sharp += 2 * static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(k_in + 1);
    for (std::int64_t k = std::max<std::int64_t>(k_in + 1, 0); k <= k_touch; ++k) {
      shell += 2.0 * cx * shell_integral(c, k, t, profile);
    }
  }
  return static_cast<double>(sharp) + shell.value();
}

SandwichReport sandwich_check(double t, double T, double gamma, double c_gamma,
                              const JumpSequence& spectrum, const BumpProfile& profile) {
  if (!(t > 1.0) || !(t < T)) throw Error(ErrorKind::OutOfRange, "sandwich check needs 1 < t < T");
  if (!(gamma > 0.75) || gamma > 1.0) {
    throw Error(ErrorKind::InvalidArgument, "gamma must lie in (3/4, 1]");
  }
  if (!(c_gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "c_gamma must be positive");
  const auto mollifier = profile.scaled(std::pow(T, -gamma));
  const double shift = c_gamma * std::pow(T, 1.0 - gamma);
  SandwichReport report;
  report.t = t;
  report.T = T;
  report.gamma = gamma;
  report.c_gamma = c_gamma;
  report.exact = spectrum.count_typeII(kTwoPi * t);
  report.lower = mollified_count_H(std::max(t - shift, 0.0), mollifier);
  report.upper = mollified_count_H(t + shift, mollifier);
  report.holds = report.lower <= static_cast<double>(report.exact) &&
                 static_cast<double>(report.exact) <= report.upper;
  return report;
}

}  // namespace hweyl
