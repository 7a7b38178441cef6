#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace hweyl {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPiSquared = 4.0 * std::numbers::pi * std::numbers::pi;

enum class Branch : std::uint8_t { Torus = 0, TypeII = 1 };

/// Torus eigenvalue 4π²·N for N = m² + n². Every real-valued torus eigenvalue
/// in the library goes through this function so values are bit-reproducible.
inline double torus_value(std::uint64_t sum_of_squares) {
  return kFourPiSquared * static_cast<double>(sum_of_squares);
}

/// Type-II eigenvalue 2π·c(c + 2k + 1), given the integer product.
inline double typeII_value(std::uint64_t product) {
  return kTwoPi * static_cast<double>(product);
}

/// One spectral line. For the torus branch `index` is a canonical (m, n) with
/// m >= n >= 0 and the entry carries the full multiplicity r2(m² + n²); for
/// type II it is (c, k) with multiplicity 2c.
struct EigenvalueEntry {
  double value = 0.0;
  std::uint32_t multiplicity = 0;
  Branch branch = Branch::Torus;
  std::int64_t index_first = 0;
  std::int64_t index_second = 0;

  /// Exact integer behind `value`: m² + n² (torus) or c(c + 2k + 1) (type II).
  std::uint64_t payload() const;

  friend bool operator==(const EigenvalueEntry&, const EigenvalueEntry&) = default;
};

struct EnumerationOptions {
  /// Entry-count ceiling; enumeration refuses to start beyond it.
  std::uint64_t max_entries = 200'000'000;
  unsigned threads = 1;
};

/// Number of (a, b) in Z² with a² + b² = n.
std::uint64_t r2(std::uint64_t n);

/// Largest N with torus_value(N) <= limit (limit >= 0).
std::uint64_t torus_cutoff(double limit);
/// Largest B with typeII_value(B) <= limit (limit >= 0).
std::uint64_t typeII_cutoff(double limit);

std::vector<EigenvalueEntry> torus_eigenvalues(double limit, const EnumerationOptions& options = {});
std::vector<EigenvalueEntry> typeII_eigenvalues(double limit, const EnumerationOptions& options = {});

/// Exact counting function N(s) = #{λ <= s} (with multiplicity) over both
/// branches, stored as distinct sorted jumps with running totals.
class JumpSequence {
 public:
  JumpSequence() = default;

  /// Merges the two branches. `entries` may be in any order; entries above
  /// `limit` are ignored. The torus zero mode (0, 0) must be present.
  static JumpSequence from_entries(double limit, std::span<const EigenvalueEntry> entries);

  double limit() const { return limit_; }
  std::span<const double> jumps() const { return jumps_; }
  std::span<const std::uint64_t> cumulative() const { return cumulative_; }
  std::span<const std::uint64_t> cumulative_torus() const { return cumulative_torus_; }
  std::size_t size() const { return jumps_.size(); }

  /// Index of the last jump <= s. Requires 0 <= s <= limit.
  std::size_t index_at(double s) const;

  std::uint64_t count_total(double s) const;
  std::uint64_t count_torus(double s) const;
  std::uint64_t count_typeII(double s) const;

  friend bool operator==(const JumpSequence&, const JumpSequence&) = default;

 private:
  void check_range(double s) const;

  double limit_ = 0.0;
  std::vector<double> jumps_;
  std::vector<std::uint64_t> cumulative_;
  std::vector<std::uint64_t> cumulative_torus_;
};

/// Both branches up to `limit`, merged.
JumpSequence merged_jump_sequence(double limit, const EnumerationOptions& options = {});

/// Torus branch only; used for the flat-torus calibration runs.
JumpSequence torus_jump_sequence(double limit, const EnumerationOptions& options = {});

}  // namespace hweyl
