#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hweyl {

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
/// 2n - 1.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(std::size_t n);

struct AdaptiveOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  std::size_t max_intervals = 200000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t intervals = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration. The interval with
/// the largest error estimate is always bisected next, so isolated jump
/// discontinuities get resolved without any knowledge of where they are.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const AdaptiveOptions& options = {});

}  // namespace hweyl
