#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hweyl/mollifier.hpp"
#include "hweyl/spectrum.hpp"

namespace hweyl {

struct ExpSumTerm {
  std::uint32_t mu = 0;
  std::uint32_t nu = 0;
  double weight = 0.0;
  /// √(μν).
  double frequency = 0.0;
  bool diagonal = false;
  friend bool operator==(const ExpSumTerm&, const ExpSumTerm&) = default;
};

struct ExpSumConfig {
  double T = 0.0;
  double gamma = 11.0 / 14.0;
  double alpha = 11.0 / 7.0 + 0.01;
  double epsilon = 0.0;

  /// Fills epsilon = T^{-γ} after checking 3/2 < 2γ < α < 2 and T > 1.
  static ExpSumConfig make(double T, double gamma = 11.0 / 14.0, double alpha = 11.0 / 7.0 + 0.01);
  void validate() const;
};

inline constexpr std::size_t kDefaultTermBudget = 20'000'000;

/// Off-diagonal terms 0 < ν < μ, μ ≡ ν (mod 2), μν < T^α, and diagonal terms
/// ν² < T^α, ordered by (μν, μ). `profile.epsilon()` must equal config.epsilon.
std::vector<ExpSumTerm> build_terms(const ExpSumConfig& config, const BumpProfile& profile,
                                    std::size_t max_terms = kDefaultTermBudget);

/// Number of terms build_terms would return, without weights.
std::uint64_t count_terms(const ExpSumConfig& config);

/// R^ε_H(t) = t^{3/4} Σ weight·cos(2π√t·√(μν) - π/4), t >= 1.
double evaluate_R_eps(double t, std::span<const ExpSumTerm> terms);

struct GapSample {
  double t = 0.0;
  double mollified = 0.0;
  double R_eps = 0.0;
  double R_exact = 0.0;
  /// N^ε_H(t) - (2/3)t^{3/2} + t/2 - R^ε_H(t).
  double residual = 0.0;
  /// |R^ε_H(t) - R_H(2πt)|.
  double abs_gap = 0.0;
};

struct MeanSquareReport {
  double T = 0.0;
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
  double residual_rms = 0.0;
  double gap_rms = 0.0;
  /// RMS of residual / t^{0.6}.
  double normalized_residual_rms = 0.0;
  /// Largest |residual| / t^{0.6}.
  double max_normalized_residual = 0.0;
  std::vector<GapSample> samples;
};

/// Mean squares over t drawn uniformly from [1, T] with a seeded mt19937_64.
/// The spectrum must reach 2πT.
MeanSquareReport meansquare_gap(const ExpSumConfig& config, std::span<const ExpSumTerm> terms,
                                const JumpSequence& spectrum, const BumpProfile& profile,
                                std::size_t sample_count, std::uint64_t seed = 1);

/// CSV with header `t,R_eps,R_exact,abs_gap`.
void write_gap_csv(std::ostream& out, std::span<const GapSample> samples);

}  // namespace hweyl
