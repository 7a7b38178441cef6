#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hweyl/constants.hpp"
#include "hweyl/spectrum.hpp"
#include "oracles.hpp"

using namespace hweyl;

TEST_CASE("square_free") {
  CHECK(square_free(1));
  CHECK(square_free(3));
  CHECK_FALSE(square_free(12));
  DivisorSieve sieve(1000);
  for (std::uint64_t n = 1; n <= 1000; ++n) CHECK(sieve.square_free(n) == square_free(n));
}

TEST_CASE("same parity pairs") {
  using P = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
  CHECK(same_parity_pairs(12, false) == P{{2, 6}});
  CHECK(same_parity_pairs(3, false) == P{{1, 3}});
  CHECK(same_parity_pairs(4, true) == P{{2, 2}});
  CHECK(same_parity_pairs(4, false).empty());
  DivisorSieve sieve(5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    CHECK(sieve.same_parity_pairs(n, false) == same_parity_pairs(n, false));
    CHECK(sieve.same_parity_pairs(n, true) == same_parity_pairs(n, true));
  }
}

TEST_CASE("delta-zero examples") {
  auto at12 = delta_zero_terms(12);
  auto it = std::find_if(at12.begin(), at12.end(), [](const DeltaZeroTerm& t) {
    return t.sum_id == 1 && t.kernel == 3 && t.m == std::array<std::uint64_t, 3>{1, 1, 2};
  });
  REQUIRE(it != at12.end());
  CHECK(it->nu == std::array<std::uint64_t, 3>{1, 1, 2});
  CHECK(it->mu == std::array<std::uint64_t, 3>{3, 3, 6});
  const double w = std::pow(3.0, -1.25) * std::pow(3.0, -1.25) * std::pow(6.0, -1.25) * std::pow(2.0, -0.25);
  CHECK(it->weight == doctest::Approx(w).epsilon(1e-14));
  CHECK(it->weight == doctest::Approx(5.75e-3).epsilon(2e-3));

  auto at4 = delta_zero_terms(4);
  auto d = std::find_if(at4.begin(), at4.end(), [](const DeltaZeroTerm& t) { return t.sum_id == 2; });
  REQUIRE(d != at4.end());
  CHECK(d->nu == std::array<std::uint64_t, 3>{1, 1, 2});
  CHECK(d->weight == doctest::Approx(std::pow(2.0, -1.5)));

  auto at2 = delta_zero_terms(2);
  CHECK(std::none_of(at2.begin(), at2.end(), [](const DeltaZeroTerm& t) { return t.sum_id == 1; }));
}

TEST_CASE("every term is resonant, positive and even") {
  enumerate_delta_zero(3000, [](const DeltaZeroTerm& t) {
    CHECK(t.weight > 0.0);
    CHECK((t.nu[0] + t.nu[1] + t.nu[2]) % 2 == 0);
    CHECK(t.m[0] + t.m[1] == t.m[2]);
    const double gap = std::sqrt(double(t.mu[0] * t.nu[0])) + std::sqrt(double(t.mu[1] * t.nu[1])) -
                       std::sqrt(double(t.mu[2] * t.nu[2]));
    CHECK(std::abs(gap) < 1e-12);
  });
}

TEST_CASE("kernel enumeration matches brute force") {
  for (std::uint64_t limit : {12u, 50u, 120u, 200u}) {
    std::vector<oracle::ResonanceKey> mine;
    enumerate_delta_zero(limit, [&](const DeltaZeroTerm& t) {
      mine.push_back({static_cast<std::uint64_t>(t.sum_id), t.nu[0], t.mu[0], t.nu[1], t.mu[1],
                      t.nu[2], t.mu[2]});
    });
    std::sort(mine.begin(), mine.end());
    CHECK(mine == oracle::brute_force_resonances(limit));
  }
}

TEST_CASE("b3 partials") {
  auto small = b3_estimate(12);
  CHECK(small.partial > 0.0);
  double sum = 0.0;
  for (double p : small.per_sum_partials) sum += p;
  CHECK(small.partial == doctest::Approx(sum).epsilon(1e-15));

  double previous = 0.0;
  for (std::uint64_t L : {100u, 400u, 1000u, 2000u}) {
    auto e = b3_estimate(L);
    CHECK(e.partial >= previous);
    previous = e.partial;
  }
  auto thousand = b3_estimate(1000);
  auto two = b3_estimate(2000);
  CHECK(std::abs(two.partial - thousand.partial) < thousand.tail_estimate);
  CHECK(two.tail_estimate < thousand.tail_estimate);
  CHECK_THROWS(b3_estimate(11));
}

TEST_CASE("d3 and c2") {
  auto e = b3_estimate(500);
  CHECK(d3_from_b3(e) == e.partial * std::pow(2.0 * kPi, -2.25));
  CHECK(d3_estimate(500) == d3_from_b3(e));
  CHECK(d3_estimate(500) > 0.0);
  CHECK(c2_partial(1) == doctest::Approx(16.0 / (6.0 * std::pow(kPi, 3))).epsilon(1e-14));
  CHECK(c2_partial(1) == doctest::Approx(0.08601).epsilon(1e-3));
  CHECK(c2_partial(2) == doctest::Approx(0.11642).epsilon(1e-3));
  double previous = 0.0;
  for (std::uint64_t n = 1; n <= 4096; n *= 2) {
    CHECK(c2_partial(n) >= previous);
    previous = c2_partial(n);
  }
  double ref = 0.0;
  for (std::uint64_t n = 1; n <= 300; ++n) {
    const double r = static_cast<double>(oracle::r2(n));
    ref += r * r / std::pow(static_cast<double>(n), 1.5);
  }
  CHECK(c2_partial(300) == doctest::Approx(ref / (6.0 * std::pow(kPi, 3))).epsilon(1e-13));
}
