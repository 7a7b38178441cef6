#include <cmath>

#include "doctest.h"
#include "hweyl/error.hpp"
#include "hweyl/mollifier.hpp"
#include "hweyl/quadrature.hpp"
#include "hweyl/spectrum.hpp"
#include "oracles.hpp"

using namespace hweyl;

namespace {

double bump(double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }

/// ρ̂₁(ξ) by plain composite Simpson on [-1, 1].
double simpson_transform(double xi) {
  const int n = 200000;
  const double h = 2.0 / n;
  double num = 0.0;
  double den = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double x = -1.0 + j * h;
    const double w = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    num += w * bump(x) * std::cos(2.0 * M_PI * xi * x);
    den += w * bump(x);
  }
  return num / den;
}

/// (χ_{A_t} * ρ_ε)(c, k) by a dense 2-D midpoint sum.
double midpoint_indicator(double c, double k, double t, double eps, const BumpProfile& p) {
  const int n = 800;
  const double h = 2.0 / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = -1.0 + (i + 0.5) * h;
    const double x = c + eps * u;
    for (int j = 0; j < n; ++j) {
      const double v = -1.0 + (j + 0.5) * h;
      const double y = k + eps * v;
      if (x * (x + 2.0 * y + 1.0) <= t) acc += p.density(u) * p.density(v);
    }
  }
  return acc * h * h;
}

}  // namespace

TEST_CASE("bump normalization and transform") {
  const auto& p = BumpProfile::standard();
  CHECK(p.normalization() == doctest::Approx(1.0 / 0.443993816168).epsilon(1e-10));
  CHECK(std::abs(p.transform(0.0) - 1.0) <= p.quad_tolerance());
  for (double xi : {0.1, 0.37, 1.0, 2.5, 7.3, 19.0}) {
    CHECK(p.transform(xi) == p.transform(-xi));
    CHECK(std::abs(p.transform(xi)) <= 1.0);
    CHECK(std::abs(p.transform(xi) - simpson_transform(xi)) < 1e-9);
    CHECK(std::abs(p.transform(xi) - p.transform_direct(xi)) < 1e-9);
  }
  CHECK(std::abs(p.transform(50.0)) < 1e-6);
  CHECK(p.transform(1e3) == 0.0);

  auto q = p.scaled(0.01);
  CHECK(q.transform_eps(30.0, 70.0) == doctest::Approx(p.transform(0.3) * p.transform(0.7)));
  CHECK(q.normalization() == p.normalization());
}

TEST_CASE("bump cdf") {
  const auto& p = BumpProfile::standard();
  CHECK(p.cdf(-1.5) == 0.0);
  CHECK(p.cdf(1.5) == 1.0);
  CHECK(p.cdf(0.0) == 0.5);
  for (double x : {-0.8, -0.31, 0.05, 0.6}) {
    auto r = integrate_adaptive([&](double y) { return p.density(y); }, -1.0, x);
    CHECK(p.cdf(x) == doctest::Approx(r.value).epsilon(1e-10));
    CHECK(p.cdf(x) + p.cdf(-x) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("unreachable tolerance") {
  BumpProfile::Options options;
  options.quad_tolerance = 1e-30;
  options.max_nodes = 256;
  try {
    BumpProfile::build(options);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QuadratureFailure);
  }
}

TEST_CASE("mollified count examples") {
  auto p = BumpProfile::standard().scaled(1e-3);
  CHECK(mollified_count_H(0.0, p) == 0.0);
  // (1, 0) and (1, 1) sit at g = 2 and g = 4; t = 3 is far from both
  CHECK(mollified_count_H(3.0, p) == 2.0);
  // at t = 4 the point (1, 1) lies on the boundary and gets about half weight
  CHECK(mollified_count_H(4.0, p) == doctest::Approx(3.0).epsilon(1e-3));
  const double edge = mollified_count_H(2.0 + 1e-9, p);
  CHECK(edge > 0.0);
  CHECK(edge < 2.0);
  CHECK(edge == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("shell values agree with a 2-D midpoint sum") {
  const double eps = 0.05;
  auto p = BumpProfile::standard().scaled(eps);
  struct Case {
    std::int64_t c;
    std::int64_t k;
    double t;
  };
  // steep and shallow boundary crossings
  for (const auto& cs : {Case{1, 3, 8.03}, Case{1, 0, 2.0}, Case{6, 0, 42.1}, Case{3, 5, 41.5},
                         Case{2, 10, 45.97}}) {
    auto m = mollified_indicator(cs.c, cs.k, cs.t, p);
    REQUIRE(m.point_class == PointClass::Shell);
    CHECK(m.value == doctest::Approx(midpoint_indicator(cs.c, cs.k, cs.t, eps, p)).epsilon(2e-3));
  }
}

TEST_CASE("locality: far points take the sharp value") {
  const double eps = 0.01;
  auto p = BumpProfile::standard().scaled(eps);
  const double t = 500.0;
  for (std::int64_t c = 1; c <= 25; ++c) {
    for (std::int64_t k = 0; k <= 260; ++k) {
      const double x = static_cast<double>(c);
      const double y = static_cast<double>(k);
      // distance to the curve bounded below through |∇g|
      const double g = x * (x + 2.0 * y + 1.0);
      const double grad = std::hypot(2.0 * x + 2.0 * y + 1.0, 2.0 * x);
      const double worst = grad + 4.0 * eps;  // ∇g varies by at most this near (x, y)
      if (std::abs(g - t) / worst <= std::sqrt(2.0) * eps) continue;
      auto m = mollified_indicator(c, k, t, p);
      CHECK(m.point_class != PointClass::Shell);
      CHECK(m.value == (g <= t ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("mollified count is monotone in t") {
  auto p = BumpProfile::standard().scaled(0.02);
  double previous = 0.0;
  for (double t = 0.0; t <= 300.0; t += 0.37) {
    const double v = mollified_count_H(t, p);
    CHECK(v >= previous);
    previous = v;
  }
}

TEST_CASE("sharp limit matches the exact count") {
  auto p = BumpProfile::standard().scaled(1e-6);
  auto seq = merged_jump_sequence(kTwoPi * 400.0);
  for (double t = 1.5; t < 400.0; t += 7.1234) {
    CHECK(mollified_count_H(t, p) ==
          doctest::Approx(static_cast<double>(oracle::typeII_count(kTwoPi * t))).epsilon(1e-12));
  }
}

TEST_CASE("sandwich examples") {
  auto seq = merged_jump_sequence(kTwoPi * 1e4);
  CHECK(sandwich_check(10.0, 1e4, 11.0 / 14.0, 3.0, seq).holds);
  CHECK(sandwich_check(100.0, 1e4, 0.8, 3.0, seq).holds);
  auto r = sandwich_check(1e4 - 1.0, 1e4, 1.0, 3.0, seq);
  CHECK(r.holds);
  CHECK(r.exact == seq.count_typeII(kTwoPi * (1e4 - 1.0)));
  CHECK(r.lower <= r.upper);
  CHECK_THROWS_AS(sandwich_check(0.5, 1e4, 0.8, 3.0, seq), Error);
  CHECK_THROWS_AS(sandwich_check(10.0, 1e4, 0.7, 3.0, seq), Error);
  CHECK_THROWS_AS(mollified_count_H(10.0, BumpProfile::standard().scaled(0.5)), Error);
}
