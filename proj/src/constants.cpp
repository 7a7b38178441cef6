#include "hweyl/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hweyl/error.hpp"
#include "hweyl/spectrum.hpp"
#include "hweyl/summation.hpp"

namespace hweyl {

bool square_free(std::uint64_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "square_free needs k >= 1");
  for (std::uint64_t p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      k /= p;
      if (k % p == 0) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> same_parity_pairs(std::uint64_t n,
                                                                       bool allow_equal) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "same_parity_pairs needs n >= 1");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t nu = 1; nu * nu <= n; ++nu) {
    if (n % nu != 0) continue;
    const std::uint64_t mu = n / nu;
    if ((mu - nu) % 2 != 0) continue;
    if (mu == nu && !allow_equal) continue;
    out.emplace_back(nu, mu);
  }
  return out;
}

DivisorSieve::DivisorSieve(std::uint64_t bound) : spf_(bound + 1, 0) {
  if (bound > 0xffffffffULL) throw Error(ErrorKind::InvalidArgument, "sieve bound too large");
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

bool DivisorSieve::square_free(std::uint64_t n) const {
  if (n == 0 || n > bound()) throw Error(ErrorKind::OutOfRange, "sieve lookup out of range");
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    n /= p;
    if (n % p == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> DivisorSieve::divisors(std::uint64_t n) const {
  if (n == 0 || n > bound()) throw Error(ErrorKind::OutOfRange, "sieve lookup out of range");
  std::vector<std::uint64_t> divs{1};
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    const std::size_t base = divs.size();
    std::uint64_t pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> DivisorSieve::same_parity_pairs(
    std::uint64_t n, bool allow_equal) const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const std::uint64_t nu : divisors(n)) {
    const std::uint64_t mu = n / nu;
    if (nu > mu) break;
    if ((mu - nu) % 2 != 0) continue;
    if (mu == nu && !allow_equal) continue;
    out.emplace_back(nu, mu);
  }
  return out;
}

namespace {

using Pairs = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

double offdiag_factor(std::uint64_t nu, std::uint64_t mu) {
  return std::pow(static_cast<double>(mu), -1.25) * std::pow(static_cast<double>(nu), -0.25);
}

double diag_factor(std::uint64_t nu) { return std::pow(static_cast<double>(nu), -1.5); }

void check_term(const DeltaZeroTerm& term) {
  const std::uint64_t parity = term.nu[0] + term.nu[1] + term.nu[2];
  if (parity % 2 != 0 || !(term.weight > 0.0) || term.m[0] + term.m[1] != term.m[2]) {
    throw std::logic_error("resonance term violates parity, positivity or m1 + m2 = m3");
  }
  for (int j = 0; j < 3; ++j) {
    if (term.mu[j] * term.nu[j] != term.kernel * term.m[j] * term.m[j]) {
      throw std::logic_error("resonance term violates mu*nu = k*m^2");
    }
  }
}

}  // namespace

void enumerate_delta_zero(std::uint64_t limit,
                          const std::function<void(const DeltaZeroTerm&)>& visit) {
  if (limit == 0) throw Error(ErrorKind::InvalidArgument, "enumerate_delta_zero needs limit >= 1");
  const DivisorSieve sieve(limit);
  for (std::uint64_t k = 1; 4 * k <= limit; ++k) {
    if (!sieve.square_free(k)) continue;
    // Off-diagonal pairs for k·m², reused across m₃.
    std::vector<Pairs> offdiag{Pairs{}};
    for (std::uint64_t m3 = 2; k * m3 * m3 <= limit; ++m3) {
      while (offdiag.size() <= m3) {
        const std::uint64_t m = offdiag.size();
        offdiag.push_back(sieve.same_parity_pairs(k * m * m, false));
      }
      for (std::uint64_t m1 = 1; m1 < m3; ++m1) {
        const std::uint64_t m2 = m3 - m1;
        DeltaZeroTerm term;
        term.kernel = k;
        term.m = {m1, m2, m3};
        const std::array<std::uint64_t, 3> m = term.m;
        // sum 1: all slots off-diagonal
        term.sum_id = 1;
        for (const auto& [n1, u1] : offdiag[m1]) {
          for (const auto& [n2, u2] : offdiag[m2]) {
            for (const auto& [n3, u3] : offdiag[m3]) {
              term.nu = {n1, n2, n3};
              term.mu = {u1, u2, u3};
              term.weight = offdiag_factor(n1, u1) * offdiag_factor(n2, u2) * offdiag_factor(n3, u3);
              check_term(term);
              visit(term);
            }
          }
        }
        if (k != 1) continue;
        // sum 2: all diagonal, ν = m
        term.sum_id = 2;
        term.nu = m;
        term.mu = m;
        term.weight = diag_factor(m[0]) * diag_factor(m[1]) * diag_factor(m[2]);
        check_term(term);
        visit(term);
        // sum 3: slot 3 diagonal
        term.sum_id = 3;
        for (const auto& [n1, u1] : offdiag[m1]) {
          for (const auto& [n2, u2] : offdiag[m2]) {
            term.nu = {n1, n2, m3};
            term.mu = {u1, u2, m3};
            term.weight = offdiag_factor(n1, u1) * offdiag_factor(n2, u2) * diag_factor(m3);
            check_term(term);
            visit(term);
          }
        }
        // sum 4: slot 1 diagonal
        term.sum_id = 4;
        for (const auto& [n2, u2] : offdiag[m2]) {
          for (const auto& [n3, u3] : offdiag[m3]) {
            term.nu = {m1, n2, n3};
            term.mu = {m1, u2, u3};
            term.weight = diag_factor(m1) * offdiag_factor(n2, u2) * offdiag_factor(n3, u3);
            check_term(term);
            visit(term);
          }
        }
      }
    }
  }
}

std::vector<DeltaZeroTerm> delta_zero_terms(std::uint64_t limit) {
  std::vector<DeltaZeroTerm> out;
  enumerate_delta_zero(limit, [&](const DeltaZeroTerm& t) { out.push_back(t); });
  return out;
}

std::array<double, 4> b3_prefactors() {
  const double s = std::sqrt(2.0) / (kPi * kPi * kPi);
  return {3.0 * s / 26.0, 3.0 * s / 208.0, 9.0 * s / 52.0, 9.0 * s / 104.0};
}

SeriesEstimate b3_estimate(std::uint64_t limit) {
  if (limit < 12) throw Error(ErrorKind::InvalidArgument, "b3_estimate needs limit >= 12");
  const auto pre = b3_prefactors();
  std::array<CompensatedSum, 4> full;
  std::array<CompensatedSum, 4> half;
  SeriesEstimate est;
  enumerate_delta_zero(limit, [&](const DeltaZeroTerm& t) {
    const auto i = static_cast<std::size_t>(t.sum_id - 1);
    full[i] += t.weight;
    if (2 * t.kernel * t.m[2] * t.m[2] <= limit) half[i] += t.weight;
    ++est.term_count;
  });
  CompensatedSum total;
  CompensatedSum total_half;
  for (std::size_t i = 0; i < 4; ++i) {
    est.per_sum_partials[i] = pre[i] * full[i].value();
    total += est.per_sum_partials[i];
    total_half += pre[i] * half[i].value();
  }
  est.partial = total.value();
  est.truncation_limit = limit;
  est.tail_estimate = 4.0 * std::abs(est.partial - total_half.value());
  return est;
}

double d3_factor() { return std::pow(kTwoPi, -2.25); }

double d3_from_b3(const SeriesEstimate& b3) { return d3_factor() * b3.partial; }

double d3_estimate(std::uint64_t limit) { return d3_from_b3(b3_estimate(limit)); }

double c2_partial(std::uint64_t n_max) {
  if (n_max == 0) throw Error(ErrorKind::InvalidArgument, "c2_partial needs n_max >= 1");
  std::vector<std::uint32_t> r(n_max + 1, 0);
  for (std::uint64_t a = 0; a * a <= n_max; ++a) {
    for (std::uint64_t b = 0; a * a + b * b <= n_max; ++b) {
      const std::uint32_t w = (a == 0 && b == 0) ? 1 : (a == 0 || b == 0) ? 2 : 4;
      r[a * a + b * b] += w;
    }
  }
  CompensatedSum sum;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (r[n] == 0) continue;
    const double rn = r[n];
    sum += rn * rn * std::pow(static_cast<double>(n), -1.5);
  }
  return sum.value() / (6.0 * kPi * kPi * kPi);
}

}  // namespace hweyl
