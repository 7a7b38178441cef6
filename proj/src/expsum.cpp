#include "hweyl/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "hweyl/counting.hpp"
#include "hweyl/error.hpp"
#include "hweyl/format.hpp"
#include "hweyl/summation.hpp"

namespace hweyl {

ExpSumConfig ExpSumConfig::make(double T, double gamma, double alpha) {
  ExpSumConfig config;
  config.T = T;
  config.gamma = gamma;
  config.alpha = alpha;
  config.epsilon = std::pow(T, -gamma);
  config.validate();
  return config;
}

void ExpSumConfig::validate() const {
  if (!(T > 1.0) || !std::isfinite(T)) {
    throw Error(ErrorKind::InvalidArgument, "T must be finite and > 1");
  }
  if (!(1.5 < 2.0 * gamma && 2.0 * gamma < alpha && alpha < 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "parameters violate 3/2 < 2*gamma < alpha < 2 (gamma=" +
                                                std::to_string(gamma) +
                                                ", alpha=" + std::to_string(alpha) + ")");
  }
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
}

namespace {

/// Strict bound μν < T^α as an integer: largest admissible product.
std::uint64_t max_product(const ExpSumConfig& config) {
  const double cut = std::pow(config.T, config.alpha);
  if (cut > 4.0e18) throw Error(ErrorKind::TermBudgetExceeded, "T^alpha too large");
  auto n = static_cast<std::uint64_t>(std::ceil(cut));
  while (n > 0 && static_cast<double>(n) >= cut) --n;
  return n;
}

}  // namespace

std::uint64_t count_terms(const ExpSumConfig& config) {
  config.validate();
  const std::uint64_t n_max = max_product(config);
  std::uint64_t count = 0;
  for (std::uint64_t nu = 1; nu * nu <= n_max; ++nu) {
    ++count;  // diagonal
    const std::uint64_t mu_max = n_max / nu;
    if (mu_max >= nu + 2) count += (mu_max - nu) / 2;
  }
  return count;
}

std::vector<ExpSumTerm> build_terms(const ExpSumConfig& config, const BumpProfile& profile,
                                    std::size_t max_terms) {
  config.validate();
  if (std::abs(profile.epsilon() - config.epsilon) > 1e-12 * config.epsilon) {
    throw Error(ErrorKind::InvalidArgument, "profile epsilon does not match T^-gamma");
  }
  const std::uint64_t total = count_terms(config);
  if (total > max_terms) {
    throw Error(ErrorKind::TermBudgetExceeded, std::to_string(total) +
                                                   " exponential-sum terms exceed the budget of " +
                                                   std::to_string(max_terms));
  }
  const std::uint64_t n_max = max_product(config);
  if (n_max > std::uint64_t{0xffffffff}) {
    throw Error(ErrorKind::TermBudgetExceeded, "mu exceeds 32-bit range");
  }
  const double eps = config.epsilon;
  std::vector<ExpSumTerm> terms;
  terms.reserve(total);
  for (std::uint64_t nu = 1; nu * nu <= n_max; ++nu) {
    const double sign = (nu % 2 == 0) ? 1.0 : -1.0;
    const auto dnu = static_cast<double>(nu);
    const double f_nu = profile.transform(eps * dnu);
    ExpSumTerm diag;
    diag.mu = diag.nu = static_cast<std::uint32_t>(nu);
    diag.weight = sign * std::pow(dnu, -1.5) * f_nu * f_nu / (2.0 * kPi);
    diag.frequency = dnu;
    diag.diagonal = true;
    terms.push_back(diag);
    const double nu_factor = sign * std::pow(dnu, -0.25) * f_nu / kPi;
    for (std::uint64_t mu = nu + 2; mu * nu <= n_max; mu += 2) {
      const auto dmu = static_cast<double>(mu);
      ExpSumTerm term;
      term.mu = static_cast<std::uint32_t>(mu);
      term.nu = static_cast<std::uint32_t>(nu);
      term.weight = nu_factor * std::pow(dmu, -1.25) * profile.transform(eps * 0.5 * (dmu + dnu));
      term.frequency = std::sqrt(static_cast<double>(mu * nu));
      terms.push_back(term);
    }
  }
  std::sort(terms.begin(), terms.end(), [](const ExpSumTerm& a, const ExpSumTerm& b) {
    const std::uint64_t pa = std::uint64_t{a.mu} * a.nu;
    const std::uint64_t pb = std::uint64_t{b.mu} * b.nu;
    return pa != pb ? pa < pb : a.mu < b.mu;
  });
  return terms;
}

double evaluate_R_eps(double t, std::span<const ExpSumTerm> terms) {
  if (!(t >= 1.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::OutOfRange, "R_eps needs finite t >= 1");
  }
  const long double lt = t;
  CompensatedSum sum;
  for (const auto& term : terms) {
    if (term.weight == 0.0) continue;
    // cos(2π√(tμν) - π/4) with the argument reduced mod 1 in extended precision.
    const long double root = std::sqrt(lt * static_cast<long double>(std::uint64_t{term.mu} * term.nu));
    const auto frac = static_cast<double>(root - std::floor(root));
    sum += term.weight * std::cos(kTwoPi * frac - 0.25 * kPi);
  }
  return std::pow(t, 0.75) * sum.value();
}

MeanSquareReport meansquare_gap(const ExpSumConfig& config, std::span<const ExpSumTerm> terms,
                                const JumpSequence& spectrum, const BumpProfile& profile,
                                std::size_t sample_count, std::uint64_t seed) {
  config.validate();
  if (sample_count < 100) {
    throw Error(ErrorKind::InvalidArgument, "mean-square estimate needs at least 100 samples");
  }
  if (kTwoPi * config.T > spectrum.limit()) {
    throw Error(ErrorKind::OutOfRange, "spectrum does not reach 2*pi*T");
  }
  const auto mollifier = profile.scaled(config.epsilon);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(1.0, config.T);

  MeanSquareReport report;
  report.T = config.T;
  report.seed = seed;
  report.sample_count = sample_count;
  report.samples.reserve(sample_count);
  CompensatedSum res2;
  CompensatedSum gap2;
  CompensatedSum norm2;
  for (std::size_t i = 0; i < sample_count; ++i) {
    GapSample s;
    s.t = dist(rng);
    s.mollified = mollified_count_H(s.t, mollifier);
    s.R_eps = evaluate_R_eps(s.t, terms);
    s.R_exact = remainder_H_scaled(s.t, spectrum);
    s.residual = s.mollified - (2.0 / 3.0) * std::pow(s.t, 1.5) + 0.5 * s.t - s.R_eps;
    s.abs_gap = std::abs(s.R_eps - s.R_exact);
    const double normalized = s.residual / std::pow(s.t, 0.6);
    res2 += s.residual * s.residual;
    gap2 += s.abs_gap * s.abs_gap;
    norm2 += normalized * normalized;
    report.max_normalized_residual = std::max(report.max_normalized_residual, std::abs(normalized));
    report.samples.push_back(s);
  }
  const auto n = static_cast<double>(sample_count);
  report.residual_rms = std::sqrt(res2.value() / n);
  report.gap_rms = std::sqrt(gap2.value() / n);
  report.normalized_residual_rms = std::sqrt(norm2.value() / n);
  return report;
}

void write_gap_csv(std::ostream& out, std::span<const GapSample> samples) {
  out << "t,R_eps,R_exact,abs_gap\n";
  for (const auto& s : samples) {
    out << format_real(s.t) << ',' << format_real(s.R_eps) << ',' << format_real(s.R_exact) << ','
        << format_real(s.abs_gap) << '\n';
  }
}

}  // namespace hweyl
