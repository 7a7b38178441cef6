#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hweyl/counting.hpp"
#include "hweyl/error.hpp"

using namespace hweyl;

TEST_CASE("Weyl constant") {
  const auto w = weyl_constants();
  CHECK(w.kappa == doctest::Approx(std::sqrt(2.0 * kPi) / (6.0 * kPi * kPi)).epsilon(1e-15));
  CHECK(std::abs(w.kappa / ((2.0 / 3.0) * std::pow(2.0 * kPi, -1.5)) - 1.0) < 1e-14);
  CHECK(w.volume == doctest::Approx(std::sqrt(2.0 * kPi)));
  CHECK(w.kappa == doctest::Approx(0.042332).epsilon(1e-5));
}

TEST_CASE("main term") {
  CHECK(main_term(0.0) == 0.0);
  CHECK(main_term(1.0) == weyl_constants().kappa);
  CHECK(main_term(4.0) == doctest::Approx(8.0 * weyl_constants().kappa).epsilon(1e-15));
}

TEST_CASE("remainder examples") {
  auto seq = merged_jump_sequence(100.0);
  const double kappa = weyl_constants().kappa;
  auto r40 = remainder(40.0, seq);
  CHECK(r40.count == 15);
  CHECK(r40.remainder == doctest::Approx(15.0 - kappa * std::pow(40.0, 1.5)).epsilon(1e-14));
  CHECK(r40.remainder == doctest::Approx(4.291).epsilon(1e-3));
  CHECK(remainder(0.0, seq).remainder == 1.0);
  CHECK(remainder(12.0, seq).remainder == doctest::Approx(-0.7597).epsilon(1e-4));
  CHECK(r40.remainder == doctest::Approx(static_cast<double>(r40.count) - r40.main).epsilon(1e-15));
}

TEST_CASE("scaled type II remainder") {
  auto seq = merged_jump_sequence(100.0);
  CHECK(remainder_H_scaled(4.0, seq) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(remainder_H_scaled(0.0, seq) == 0.0);
  CHECK(remainder_H_scaled(1.99, seq) ==
        doctest::Approx(-(2.0 / 3.0) * std::pow(1.99, 1.5) + 0.995).epsilon(1e-14));
  CHECK_THROWS_AS(remainder_H_scaled(20.0, seq), Error);
}

TEST_CASE("cancellation identity at random points") {
  auto seq = merged_jump_sequence(1e6);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(1.0, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double s = dist(rng);
    const double lhs = remainder(s, seq).remainder;
    const double rhs =
        remainder_H_scaled(s / (2.0L * std::numbers::pi_v<long double>), seq) + remainder_torus(s, seq);
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("remainder CSV") {
  auto seq = merged_jump_sequence(50.0);
  std::vector<RemainderSample> rows{remainder(0.0, seq), remainder(40.0, seq)};
  std::ostringstream out;
  write_remainder_csv(out, rows);
  const auto text = out.str();
  CHECK(text.rfind("s,count,main,remainder\n", 0) == 0);
  CHECK(text.find("\n40,15,") != std::string::npos);
  CHECK(text.find(',', 0) != std::string::npos);
}
