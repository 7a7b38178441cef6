#include "hweyl/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hweyl/error.hpp"
#include "hweyl/summation.hpp"

namespace hweyl {

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "gauss_legendre: n must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      derivative = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / derivative;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = p2;
    }
    derivative = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

/// Lagrange weights evaluating the quadratic through the three outermost
/// Kronrod nodes at the endpoint x = 1.
constexpr std::array<double, 3> edge_weights() {
  const double x0 = kKronrodNodes[0];
  const double x1 = kKronrodNodes[1];
  const double x2 = kKronrodNodes[2];
  return {(1.0 - x1) * (1.0 - x2) / ((x0 - x1) * (x0 - x2)),
          (1.0 - x0) * (1.0 - x2) / ((x1 - x0) * (x1 - x2)),
          (1.0 - x0) * (1.0 - x1) / ((x2 - x0) * (x2 - x1))};
}
constexpr std::array<double, 3> kEdge = edge_weights();

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fv{};
  fv[7] = f(center);
  double kronrod = fv[7] * kKronrodWeights[7];
  double gauss = fv[7] * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
    kronrod += kKronrodWeights[j] * (fv[j] + fv[14 - j]);
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (fv[j] + fv[14 - j]);
  }
  // QUADPACK's estimate: |K - G| alone can vanish by accident across a jump,
  // so it is scaled against the spread of f about its mean.
  const double mean = 0.5 * kronrod;
  double spread = kKronrodWeights[7] * std::abs(fv[7] - mean);
  double mass = kKronrodWeights[7] * std::abs(fv[7]);
  for (std::size_t j = 0; j < 7; ++j) {
    spread += kKronrodWeights[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    mass += kKronrodWeights[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
  }
  const double scale = std::abs(half);
  spread *= scale;
  mass *= scale;
  double error = std::abs((kronrod - gauss) * half);
  if (spread != 0.0 && error != 0.0) {
    error = spread * std::min(1.0, std::pow(200.0 * error / spread, 1.5));
  }
  // A jump between an endpoint and the outermost node is invisible to every
  // node, so compare f at the endpoints against a quadratic extrapolation of
  // the three outermost samples.
  const double fa = f(a);
  const double fb = f(b);
  const double miss_a = std::abs(fa - (kEdge[0] * fv[0] + kEdge[1] * fv[1] + kEdge[2] * fv[2]));
  const double miss_b = std::abs(fb - (kEdge[0] * fv[14] + kEdge[1] * fv[13] + kEdge[2] * fv[12]));
  error += scale * (1.0 - kKronrodNodes[0]) * (miss_a + miss_b);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (mass > std::numeric_limits<double>::min() / (50.0 * eps)) {
    error = std::max(50.0 * eps * mass, error);
  }
  return {a, b, kronrod * half, error};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const AdaptiveOptions& options) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  std::vector<Segment> open;    // max-heap on error
  std::vector<Segment> closed;  // too narrow to split further
  open.push_back(gauss_kronrod(f, a, b));
  double total_value = open.front().value;
  double total_error = open.front().error;
  std::size_t count = 1;

  // The running totals are updated by subtraction and lose everything below
  // eps times the first estimate, so they are re-summed from the pieces
  // periodically and before convergence is accepted.
  auto resum = [&] {
    CompensatedSum value;
    CompensatedSum error;
    for (const auto& s : open) {
      value += s.value;
      error += s.error;
    }
    for (const auto& s : closed) {
      value += s.value;
      error += s.error;
    }
    total_value = value.value();
    total_error = error.value();
  };
  auto tolerance = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(total_value)); };

  while (!open.empty()) {
    if (total_error <= tolerance() || count % 1024 == 0) {
      resum();
      if (total_error <= tolerance()) {
        result.converged = true;
        break;
      }
    }
    if (count >= options.max_intervals) break;
    std::pop_heap(open.begin(), open.end());
    const Segment worst = open.back();
    open.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <= 64.0 * std::numeric_limits<double>::epsilon() *
                                   std::max(std::abs(worst.a), std::abs(worst.b))) {
      closed.push_back(worst);
      continue;
    }
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    open.push_back(left);
    std::push_heap(open.begin(), open.end());
    open.push_back(right);
    std::push_heap(open.begin(), open.end());
    ++count;
  }
  resum();
  result.value = total_value;
  result.error_estimate = total_error;
  result.intervals = count;
  result.converged = total_error <= tolerance();
  return result;
}

}  // namespace hweyl
