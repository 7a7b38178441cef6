#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace hweyl {

bool square_free(std::uint64_t k);

/// (ν, μ) with νμ = n, ν ≡ μ (mod 2), ν < μ (or ν <= μ with allow_equal),
/// ascending in ν. Trial division.
std::vector<std::pair<std::uint64_t, std::uint64_t>> same_parity_pairs(std::uint64_t n,
                                                                       bool allow_equal);

/// Smallest-prime-factor table for fast divisor listing up to a bound.
class DivisorSieve {
 public:
  explicit DivisorSieve(std::uint64_t bound);
  std::uint64_t bound() const { return spf_.size() - 1; }
  bool square_free(std::uint64_t n) const;
  std::vector<std::uint64_t> divisors(std::uint64_t n) const;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> same_parity_pairs(std::uint64_t n,
                                                                         bool allow_equal) const;

 private:
  std::vector<std::uint32_t> spf_;
};

/// One resonant triple √(μ₁ν₁) + √(μ₂ν₂) = √(μ₃ν₃) with μⱼνⱼ = k·mⱼ².
/// Slots are off-diagonal (ν < μ) or diagonal (ν = μ) according to sum_id:
/// 1 = all off-diagonal, 2 = all diagonal, 3 = slot 3 diagonal,
/// 4 = slot 1 diagonal. Diagonal slots force k = 1.
struct DeltaZeroTerm {
  std::uint64_t kernel = 0;
  std::array<std::uint64_t, 3> m{};
  std::array<std::uint64_t, 3> mu{};
  std::array<std::uint64_t, 3> nu{};
  double weight = 0.0;
  int sum_id = 0;
  friend bool operator==(const DeltaZeroTerm&, const DeltaZeroTerm&) = default;
};

/// Visits every term with k·m₃² <= limit, both orders of (m₁, m₂), in order
/// (k, m₃, m₁, sum_id, pair indices). Weights are the product of μ^{-5/4}ν^{-1/4}
/// (off-diagonal) and ν^{-3/2} (diagonal) over slots, before prefactors.
void enumerate_delta_zero(std::uint64_t limit,
                          const std::function<void(const DeltaZeroTerm&)>& visit);

std::vector<DeltaZeroTerm> delta_zero_terms(std::uint64_t limit);

/// Prefactor of each sum, indexed by sum_id - 1.
std::array<double, 4> b3_prefactors();

struct SeriesEstimate {
  double partial = 0.0;
  std::uint64_t truncation_limit = 0;
  /// 4·|b3(L) - b3(L/2)|.
  double tail_estimate = 0.0;
  std::array<double, 4> per_sum_partials{};
  std::uint64_t term_count = 0;
};

SeriesEstimate b3_estimate(std::uint64_t limit);

/// (2π)^{-9/4}.
double d3_factor();
double d3_estimate(std::uint64_t limit);
double d3_from_b3(const SeriesEstimate& b3);

/// (1/6π³) Σ_{n <= n_max} r(n)² / n^{3/2}.
double c2_partial(std::uint64_t n_max);

}  // namespace hweyl
