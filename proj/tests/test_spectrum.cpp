#include <algorithm>
#include <random>

#include "doctest.h"
#include "hweyl/error.hpp"
#include "hweyl/spectrum.hpp"
#include "oracles.hpp"

using namespace hweyl;

TEST_CASE("r2 small values") {
  CHECK(r2(0) == 1);
  CHECK(r2(1) == 4);
  CHECK(r2(5) == 8);
  for (std::uint64_t n = 0; n <= 400; ++n) CHECK(r2(n) == oracle::r2(n));
  CHECK(r2(3) == 0);
  CHECK(r2(25) == 12);
}

TEST_CASE("torus eigenvalues") {
  auto one = torus_eigenvalues(1.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].value == 0.0);
  CHECK(one[0].multiplicity == 1);

  auto forty = torus_eigenvalues(40.0);
  REQUIRE(forty.size() == 2);
  CHECK(forty[1].value == kFourPiSquared);
  CHECK(forty[1].multiplicity == 4);

  auto two = torus_eigenvalues(torus_value(2));
  CHECK(two.back().value == torus_value(2));
  CHECK(two.back().multiplicity == 4);
}

TEST_CASE("type II eigenvalues") {
  CHECK(typeII_eigenvalues(1.0).empty());

  auto thirty = typeII_eigenvalues(30.0);
  REQUIRE(thirty.size() == 2);
  CHECK(thirty[0].value == 4.0 * kPi);
  CHECK(thirty[0].index_first == 1);
  CHECK(thirty[0].index_second == 0);
  CHECK(thirty[1].value == 8.0 * kPi);
  CHECK(thirty[1].multiplicity == 2);

  auto forty = typeII_eigenvalues(40.0);
  REQUIRE(forty.size() == 4);
  // 12π twice: (1, 2) and (2, 0), ordered by c
  CHECK(forty[2].payload() == 6);
  CHECK(forty[2].index_first == 1);
  CHECK(forty[2].multiplicity == 2);
  CHECK(forty[3].payload() == 6);
  CHECK(forty[3].index_first == 2);
  CHECK(forty[3].multiplicity == 4);
}

TEST_CASE("entries reproduce their value from the index") {
  for (const auto& e : torus_eigenvalues(5e4)) {
    const auto m = static_cast<std::uint64_t>(e.index_first);
    const auto n = static_cast<std::uint64_t>(e.index_second);
    CHECK(e.value == torus_value(m * m + n * n));
    CHECK(e.multiplicity == r2(m * m + n * n));
  }
  for (const auto& e : typeII_eigenvalues(5e4)) {
    const auto c = static_cast<std::uint64_t>(e.index_first);
    const auto k = static_cast<std::uint64_t>(e.index_second);
    CHECK(e.value == typeII_value(c * (c + 2 * k + 1)));
    CHECK(e.multiplicity == 2 * c);
  }
}

TEST_CASE("threaded enumeration matches serial") {
  EnumerationOptions serial;
  EnumerationOptions threaded;
  threaded.threads = 4;
  CHECK(typeII_eigenvalues(2e5, serial) == typeII_eigenvalues(2e5, threaded));
  CHECK(merged_jump_sequence(2e5, serial) == merged_jump_sequence(2e5, threaded));
}

TEST_CASE("entry budget") {
  EnumerationOptions tight;
  tight.max_entries = 10;
  try {
    typeII_eigenvalues(1e4, tight);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CutoffTooLarge);
  }
}

TEST_CASE("merged jump sequence") {
  auto zero = merged_jump_sequence(0.0);
  REQUIRE(zero.size() == 1);
  CHECK(zero.jumps()[0] == 0.0);
  CHECK(zero.cumulative()[0] == 1);

  auto thirteen = merged_jump_sequence(13.0);
  REQUIRE(thirteen.size() == 2);
  CHECK(thirteen.jumps()[1] == 4.0 * kPi);
  CHECK(thirteen.cumulative()[1] == 3);

  auto forty = merged_jump_sequence(40.0);
  CHECK(forty.cumulative().back() == 15);
  CHECK(forty.count_torus(40.0) == 5);
  CHECK(forty.count_typeII(40.0) == 10);
  CHECK(forty.count_total(40.0) == 15);
}

TEST_CASE("counts agree with brute force") {
  auto seq = merged_jump_sequence(3000.0);
  for (int s = 0; s <= 3000; ++s) {
    const double x = s;
    CHECK(seq.count_torus(x) == oracle::torus_count(x));
    CHECK(seq.count_typeII(x) == oracle::typeII_count(x));
  }
  // exactly on eigenvalues: closed counting
  CHECK(seq.count_total(4.0 * kPi) == 3);
  CHECK(seq.count_total(std::nextafter(4.0 * kPi, 0.0)) == 1);
}

TEST_CASE("count is monotone with jumps equal to multiplicity") {
  auto seq = merged_jump_sequence(2e4);
  auto jumps = seq.jumps();
  auto cum = seq.cumulative();
  CHECK(std::is_sorted(jumps.begin(), jumps.end()));
  CHECK(std::adjacent_find(jumps.begin(), jumps.end()) == jumps.end());
  std::uint64_t total = 0;
  for (const auto& e : torus_eigenvalues(2e4)) total += e.multiplicity;
  for (const auto& e : typeII_eigenvalues(2e4)) total += e.multiplicity;
  CHECK(cum.back() == total);
  for (std::size_t i = 1; i < cum.size(); ++i) {
    CHECK(cum[i] > cum[i - 1]);
    CHECK(seq.count_total(jumps[i]) == cum[i]);
    CHECK(seq.count_total(std::nextafter(jumps[i], 0.0)) == cum[i - 1]);
  }
}

TEST_CASE("queries beyond the enumerated limit throw") {
  auto seq = merged_jump_sequence(100.0);
  try {
    (void)seq.count_total(100.5);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRange);
  }
  CHECK_THROWS_AS((void)seq.count_total(-1.0), Error);
}

TEST_CASE("torus count stays within a Gauss-scale envelope") {
  auto seq = torus_jump_sequence(1e6);
  double worst = 0.0;
  for (double s = 1.0; s <= 1e6; s *= 1.01) {
    const double dev = std::abs(static_cast<double>(seq.count_total(s)) - s / (4.0 * kPi));
    worst = std::max(worst, dev / std::sqrt(s));
  }
  MESSAGE("max |N_T(s) - s/4pi| / sqrt(s) = " << worst);
  CHECK(worst < 1.0);
}
