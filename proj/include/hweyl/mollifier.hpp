#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hweyl/spectrum.hpp"

namespace hweyl {

/// Separable bump ρ(x, y) = ρ₁(x)ρ₁(y), ρ₁(x) = c·exp(-1/(1 - x²)) on (-1, 1),
/// normalized so ∫ρ₁ = 1, together with tables for ρ̂₁ and the cumulative
/// Φ(x) = ∫_{-1}^x ρ₁. Copies and scaled() share the tables.
class BumpProfile {
 public:
  struct Options {
    double quad_tolerance = 1e-12;
    /// Nodes allowed for one transform evaluation before giving up.
    std::size_t max_nodes = 1 << 16;
    double ft_range = 64.0;
    double ft_step = 1.0 / 256.0;
    double cdf_step = 1.0 / 2048.0;
  };

  static BumpProfile build(const Options& options);
  static BumpProfile build(double quad_tolerance = 1e-12);
  /// Process-wide profile with default options, built once.
  static const BumpProfile& standard();

  /// Same tables, different ε.
  BumpProfile scaled(double epsilon) const;

  double epsilon() const { return epsilon_; }
  double normalization() const;
  double quad_tolerance() const;
  /// Largest refinement difference seen while building the tables.
  double quad_error() const;
  double table_step() const;
  double table_range() const;

  /// ρ₁(x).
  double density(double x) const;
  /// Φ(x) = ∫_{-1}^x ρ₁; 0 below -1 and 1 above 1.
  double cdf(double x) const;
  /// ρ̂₁(ξ) = ∫ ρ₁(x) cos(2πξx) dx from the table; 0 beyond the table range,
  /// where |ρ̂₁| is below the build tolerance.
  double transform(double xi) const;
  /// ρ̂₁(ξ) by direct quadrature, no table.
  double transform_direct(double xi) const;
  /// ρ̂_ε(ξ, η) = ρ̂₁(εξ)ρ̂₁(εη).
  double transform_eps(double xi, double eta) const;

 private:
  struct Tables;
  BumpProfile(std::shared_ptr<const Tables> tables, double epsilon)
      : tables_(std::move(tables)), epsilon_(epsilon) {}

  std::shared_ptr<const Tables> tables_;
  double epsilon_ = 1.0;
};

enum class PointClass { Inside, Outside, Shell };

struct MollifiedIndicator {
  PointClass point_class = PointClass::Outside;
  /// (χ_{A_t} * ρ_ε)(c, k), in [0, 1].
  double value = 0.0;
};

/// A_t = {x > 0, y > -1/2, x(x + 2y + 1) <= t}. Every lattice point (c, k) of
/// the type-II branch, k = 0 included, lies in its interior when c(c+2k+1) < t.
/// Requires ε <= 1/4 and c >= 1, k >= 0.
MollifiedIndicator mollified_indicator(std::int64_t c, std::int64_t k, double t,
                                       const BumpProfile& profile);

/// N^ε_H(t) = Σ 2c·(χ_{A_t} * ρ_ε)(c, k) over c >= 1, k >= 0.
double mollified_count_H(double t, const BumpProfile& profile);

struct SandwichReport {
  double t = 0.0;
  double T = 0.0;
  double gamma = 0.0;
  double c_gamma = 0.0;
  double lower = 0.0;
  std::uint64_t exact = 0;
  double upper = 0.0;
  bool holds = false;
};

/// With ε = T^{-γ} and h = c_γ T^{1-γ}: N^ε_H(t - h) <= N_H(2πt) <= N^ε_H(t + h).
/// `profile` supplies the tables; its ε is replaced.
SandwichReport sandwich_check(double t, double T, double gamma, double c_gamma,
                              const JumpSequence& spectrum,
                              const BumpProfile& profile = BumpProfile::standard());

}  // namespace hweyl
