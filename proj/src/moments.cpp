#include "hweyl/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hweyl/counting.hpp"
#include "hweyl/error.hpp"
#include "hweyl/quadrature.hpp"
#include "hweyl/summation.hpp"

namespace hweyl {

namespace {

void require_k(int k) {
  if (k < 1 || k > 3) {
    throw Error(ErrorKind::UnsupportedMoment,
                "moment order " + std::to_string(k) + " unsupported (k must be 1, 2 or 3)");
  }
}

double ipow(double x, int k) {
  double r = x;
  for (int i = 1; i < k; ++i) r *= x;
  return r;
}

const GaussLegendreRule& rule6() {
  static const GaussLegendreRule rule = gauss_legendre(6);
  return rule;
}

const GaussLegendreRule& rule2() {
  static const GaussLegendreRule rule = gauss_legendre(2);
  return rule;
}

/// (C - kappa s^{3/2})^k over [a, b], exact in u = √s.
struct HeisenbergPiece {
  double kappa = weyl_constants().kappa;

  double operator()(double a, double b, double count, int k) const {
    const auto& rule = rule6();
    const double ua = std::sqrt(a);
    const double ub = std::sqrt(b);
    const double mid = 0.5 * (ua + ub);
    const double half = 0.5 * (ub - ua);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = mid + half * rule.nodes[i];
      const double r = count - kappa * u * u * u;
      sum += rule.weights[i] * ipow(r, k) * 2.0 * u;
    }
    return half * sum;
  }
};

/// (C - s/4π)^k over [a, b], exact in s.
struct TorusPiece {
  double operator()(double a, double b, double count, int k) const {
    const auto& rule = rule2();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double s = mid + half * rule.nodes[i];
      sum += rule.weights[i] * ipow(count - s / (4.0 * kPi), k);
    }
    return half * sum;
  }
};

template <typename Piece>
std::vector<MomentResult> sweep(double start, std::span<const double> grid, int k,
                                const JumpSequence& spectrum, const Piece& piece) {
  require_k(k);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!(grid[g] >= start) || grid[g] > spectrum.limit()) {
      throw Error(ErrorKind::OutOfRange,
                  "grid point " + std::to_string(grid[g]) + " outside [" + std::to_string(start) +
                      ", " + std::to_string(spectrum.limit()) + "]");
    }
    if (g > 0 && grid[g] < grid[g - 1]) {
      throw Error(ErrorKind::InvalidArgument, "moment grid must be ascending");
    }
  }

  const auto jumps = spectrum.jumps();
  const auto counts = spectrum.cumulative();
  std::vector<MomentResult> out;
  out.reserve(grid.size());
  CompensatedSum acc;
  std::size_t i = grid.empty() ? 0 : spectrum.index_at(start);
  double left = start;
  std::size_t pieces = 0;
  for (const double T : grid) {
    while (i + 1 < jumps.size() && jumps[i + 1] <= T) {
      acc += piece(left, jumps[i + 1], static_cast<double>(counts[i]), k);
      left = jumps[i + 1];
      ++i;
      ++pieces;
    }
    if (T > left) {
      acc += piece(left, T, static_cast<double>(counts[i]), k);
      left = T;
      ++pieces;
    }
    out.push_back({T, k, acc.value(), MomentMethod::PiecewiseExact, pieces});
  }
  return out;
}

MomentResult quadrature_moment(double T, int k, const JumpSequence& spectrum, double rel_tol,
                               double (*main)(double)) {
  require_k(k);
  if (!(T >= 1.0) || T > spectrum.limit()) {
    throw Error(ErrorKind::OutOfRange, "moment upper limit outside [1, limit]");
  }
  auto integrand = [&](double s) {
    return ipow(static_cast<double>(spectrum.count_total(s)) - main(s), k);
  };
  AdaptiveOptions options;
  options.rel_tol = rel_tol;
  options.abs_tol = 1e-300;
  options.max_intervals = 4'000'000;
  const auto result = integrate_adaptive(integrand, 1.0, T, options);
  if (!result.converged) {
    throw Error(ErrorKind::QuadratureFailure,
                "adaptive quadrature of R^k did not reach the requested tolerance");
  }
  return {T, k, result.value, MomentMethod::Quadrature, result.intervals};
}

double torus_main(double s) { return s / (4.0 * kPi); }

void check_fit_input(std::span<const MomentResult> used) {
  if (used.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "power-law fit needs at least 3 points in the window");
  }
  for (const auto& r : used) {
    if (!(r.value > 0.0)) {
      throw Error(ErrorKind::NonpositiveValue,
                  "moment at T=" + std::to_string(r.T) + " is " + std::to_string(r.value) +
                      "; a log-log fit of sign-changing data is meaningless");
    }
  }
}

std::vector<MomentResult> fit_window(std::span<const MomentResult> curve, double min_T) {
  std::vector<MomentResult> used;
  std::copy_if(curve.begin(), curve.end(), std::back_inserter(used),
               [&](const MomentResult& r) { return r.T >= min_T; });
  check_fit_input(used);
  return used;
}

}  // namespace

MomentResult moment_integral(double T, int k, const JumpSequence& spectrum) {
  const std::array<double, 1> grid{T};
  return sweep(1.0, grid, k, spectrum, HeisenbergPiece{}).front();
}

double moment_between(double a, double b, int k, const JumpSequence& spectrum) {
  const std::array<double, 1> grid{b};
  return sweep(a, grid, k, spectrum, HeisenbergPiece{}).front().value;
}

std::vector<MomentResult> moment_curve(std::span<const double> grid, int k,
                                       const JumpSequence& spectrum) {
  return sweep(1.0, grid, k, spectrum, HeisenbergPiece{});
}

MomentResult moment_integral_quadrature(double T, int k, const JumpSequence& spectrum,
                                        double rel_tol) {
  return quadrature_moment(T, k, spectrum, rel_tol, &main_term);
}

MomentResult torus_moment_integral(double T, int k) {
  require_k(k);
  if (!(T >= 1.0)) throw Error(ErrorKind::OutOfRange, "moment upper limit must be >= 1");
  const auto torus = torus_jump_sequence(T);
  const std::array<double, 1> grid{T};
  return sweep(1.0, grid, k, torus, TorusPiece{}).front();
}

std::vector<MomentResult> torus_moment_curve(std::span<const double> grid, int k,
                                             const JumpSequence& torus) {
  return sweep(1.0, grid, k, torus, TorusPiece{});
}

MomentResult torus_moment_integral_quadrature(double T, int k, const JumpSequence& torus,
                                              double rel_tol) {
  return quadrature_moment(T, k, torus, rel_tol, &torus_main);
}

PowerFit fit_power_law(std::span<const MomentResult> curve, double min_T) {
  const auto used = fit_window(curve, min_T);
  const auto n = static_cast<double>(used.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& r : used) {
    mx += std::log(r.T);
    my += std::log(r.value);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& r : used) {
    const double dx = std::log(r.T) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(r.value) - my);
  }
  if (sxx <= 0.0) throw Error(ErrorKind::InvalidArgument, "power-law fit needs distinct T values");
  PowerFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.coefficient = std::exp(intercept);
  double ss = 0.0;
  for (const auto& r : used) {
    const double e = std::log(r.value) - (intercept + fit.exponent * std::log(r.T));
    ss += e * e;
  }
  fit.residual_rms = std::sqrt(ss / n);
  fit.points_used = used.size();
  return fit;
}

PowerFit fit_fixed_exponent(std::span<const MomentResult> curve, double exponent, double min_T) {
  const auto used = fit_window(curve, min_T);
  const auto n = static_cast<double>(used.size());
  double mean = 0.0;
  for (const auto& r : used) mean += std::log(r.value) - exponent * std::log(r.T);
  mean /= n;
  double ss = 0.0;
  for (const auto& r : used) {
    const double e = std::log(r.value) - exponent * std::log(r.T) - mean;
    ss += e * e;
  }
  return {exponent, std::exp(mean), std::sqrt(ss / n), used.size()};
}

std::vector<double> geometric_grid(double start, double ratio, std::size_t count) {
  if (!(start > 0.0) || !(ratio > 1.0) || count == 0) {
    throw Error(ErrorKind::InvalidArgument, "geometric grid needs start > 0, ratio > 1, count >= 1");
  }
  std::vector<double> grid(count);
  for (std::size_t j = 0; j < count; ++j) grid[j] = start * std::pow(ratio, static_cast<double>(j));
  return grid;
}

}  // namespace hweyl
