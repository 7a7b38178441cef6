#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hweyl/spectrum.hpp"

namespace hweyl {

enum class MomentMethod { PiecewiseExact, Quadrature };

struct MomentResult {
  double T = 0.0;
  int k = 0;
  double value = 0.0;
  MomentMethod method = MomentMethod::PiecewiseExact;
  std::size_t interval_count = 0;
};

struct PowerFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  double residual_rms = 0.0;
  std::size_t points_used = 0;
};

/// Grid points below this are pre-asymptotic and are left out of fits.
inline constexpr double kFitWindowStart = 1e3;

/// ∫₁ᵀ R(s)^k ds for R = N - kappa s^{3/2}, k in {1, 2, 3}.
///
/// N is constant between jumps, so on each piece the integrand is a polynomial
/// of degree 3k + 1 in u = √s and a 6-point Gauss-Legendre rule in u integrates
/// it exactly. Pieces are accumulated with compensated summation.
MomentResult moment_integral(double T, int k, const JumpSequence& spectrum);

/// ∫_a^b R(s)^k ds, same method.
double moment_between(double a, double b, int k, const JumpSequence& spectrum);

/// Cumulative moments at every grid point in one forward pass. The grid must
/// be ascending with 1 <= T <= spectrum.limit().
std::vector<MomentResult> moment_curve(std::span<const double> grid, int k,
                                       const JumpSequence& spectrum);

/// Independent route: adaptive Gauss-Kronrod on s -> R(s)^k with no knowledge
/// of where the jumps are.
MomentResult moment_integral_quadrature(double T, int k, const JumpSequence& spectrum,
                                        double rel_tol = 1e-9);

/// Flat-torus counterparts with remainder N_T(s) - s/4π. The sequence must
/// contain torus lines only (see torus_jump_sequence).
MomentResult torus_moment_integral(double T, int k);
std::vector<MomentResult> torus_moment_curve(std::span<const double> grid, int k,
                                             const JumpSequence& torus);
MomentResult torus_moment_integral_quadrature(double T, int k, const JumpSequence& torus,
                                              double rel_tol = 1e-9);

/// Least squares of log value against log T over points with T >= min_T.
PowerFit fit_power_law(std::span<const MomentResult> curve, double min_T = kFitWindowStart);

/// Same data, slope pinned: returns exp(mean(log value - exponent log T)).
PowerFit fit_fixed_exponent(std::span<const MomentResult> curve, double exponent,
                            double min_T = kFitWindowStart);

/// start, start·ratio, ..., start·ratio^{count-1}.
std::vector<double> geometric_grid(double start, double ratio, std::size_t count);

}  // namespace hweyl
