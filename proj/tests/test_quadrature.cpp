#include <cmath>

#include "doctest.h"
#include "hweyl/quadrature.hpp"
#include "hweyl/summation.hpp"

using namespace hweyl;

TEST_CASE("Gauss-Legendre exactness") {
  for (std::size_t n : {1u, 2u, 6u, 16u}) {
    auto rule = gauss_legendre(n);
    for (std::size_t deg = 0; deg < 2 * n; ++deg) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
      const double exact = deg % 2 == 0 ? 2.0 / static_cast<double>(deg + 1) : 0.0;
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("adaptive quadrature handles a hidden jump") {
  auto step = [](double x) { return x < 0.3 ? 1.0 : 3.0 * x * x; };
  AdaptiveOptions options;
  options.rel_tol = 1e-11;
  auto r = integrate_adaptive(step, 0.0, 1.0, options);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.3 + (1.0 - 0.027)).epsilon(1e-10));
}

TEST_CASE("adaptive quadrature on a smooth integrand") {
  auto r = integrate_adaptive([](double x) { return std::exp(-x * x); }, -3.0, 3.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::sqrt(M_PI) * std::erf(3.0)).epsilon(1e-12));
}

TEST_CASE("compensated sum keeps small addends") {
  CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 1000000; ++i) s += 1e-16;
  s += -1.0;
  CHECK(s.value() == doctest::Approx(1e-10).epsilon(1e-9));
}
