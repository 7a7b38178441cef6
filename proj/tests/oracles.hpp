#pragma once

// Independent reference computations. Nothing here calls into the library's
// enumeration or integration code.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <tuple>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// #{(m, n) in Z²: 4π²(m² + n²) <= s}.
inline std::uint64_t torus_count(double s) {
  const double four_pi2 = 4.0 * pi * pi;
  const auto bound = static_cast<std::int64_t>(std::sqrt(std::max(s, 0.0) / four_pi2)) + 1;
  std::uint64_t n = 0;
  for (std::int64_t a = -bound; a <= bound; ++a) {
    for (std::int64_t b = -bound; b <= bound; ++b) {
      if (four_pi2 * static_cast<double>(a * a + b * b) <= s) ++n;
    }
  }
  return n;
}

/// Σ 2c over c >= 1, k >= 0 with 2πc(c + 2k + 1) <= s.
inline std::uint64_t typeII_count(double s) {
  std::uint64_t n = 0;
  for (std::int64_t c = 1; 2.0 * pi * static_cast<double>(c * (c + 1)) <= s; ++c) {
    for (std::int64_t k = 0; 2.0 * pi * static_cast<double>(c * (c + 2 * k + 1)) <= s; ++k) {
      n += 2 * static_cast<std::uint64_t>(c);
    }
  }
  return n;
}

inline std::uint64_t total_count(double s) { return torus_count(s) + typeII_count(s); }

/// r(n) by scanning |a| <= √n.
inline std::uint64_t r2(std::uint64_t n) {
  std::uint64_t r = 0;
  const auto b = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n))) + 1;
  for (std::int64_t x = -b; x <= b; ++x) {
    for (std::int64_t y = -b; y <= b; ++y) {
      if (static_cast<std::uint64_t>(x * x + y * y) == n) ++r;
    }
  }
  return r;
}

/// (sum_id, ν₁, μ₁, ν₂, μ₂, ν₃, μ₃)
using ResonanceKey = std::array<std::uint64_t, 7>;

/// Resonant triples among same-parity pairs ν <= μ with μν <= limit, found by
/// testing (n₃ - n₁ - n₂)² = 4n₁n₂ over all slot combinations. Slot patterns
/// off-off-off, diag-diag-diag, off-off-diag, diag-off-off map to sums 1..4.
inline std::vector<ResonanceKey> brute_force_resonances(std::uint64_t limit) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t nu = 1; nu * nu <= limit; ++nu) {
    for (std::uint64_t mu = nu; mu * nu <= limit; mu += 2) pairs.emplace_back(nu, mu);
  }
  std::vector<ResonanceKey> out;
  for (const auto& [n1, u1] : pairs) {
    for (const auto& [n2, u2] : pairs) {
      for (const auto& [n3, u3] : pairs) {
        const auto a = static_cast<std::int64_t>(n1 * u1);
        const auto b = static_cast<std::int64_t>(n2 * u2);
        const auto c = static_cast<std::int64_t>(n3 * u3);
        const std::int64_t d = c - a - b;
        if (d < 0 || d * d != 4 * a * b) continue;
        const bool d1 = n1 == u1;
        const bool d2 = n2 == u2;
        const bool d3 = n3 == u3;
        std::uint64_t id = 0;
        if (!d1 && !d2 && !d3) id = 1;
        else if (d1 && d2 && d3) id = 2;
        else if (!d1 && !d2 && d3) id = 3;
        else if (d1 && !d2 && !d3) id = 4;
        else continue;
        out.push_back({id, n1, u1, n2, u2, n3, u3});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
