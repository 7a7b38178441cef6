#include "hweyl/counting.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "hweyl/error.hpp"
#include "hweyl/format.hpp"

namespace hweyl {

WeylConstants weyl_constants() {
  const double volume = std::sqrt(kTwoPi);
  const double ball = 4.0 * kPi / 3.0;
  return {ball * volume / (kTwoPi * kTwoPi * kTwoPi), volume};
}

double main_term(double s) {
  if (!(s >= 0.0)) throw Error(ErrorKind::InvalidArgument, "main_term needs s >= 0");
  static const double kappa = weyl_constants().kappa;
  return kappa * s * std::sqrt(s);
}

namespace {

// Remainders are small differences of numbers near s^{3/2}; at s ~ 10^6 one
// ulp of the main term is ~10^-8, so the subtraction runs in long double.
constexpr long double kPiL = std::numbers::pi_v<long double>;

long double main_term_ld(long double s) {
  static const long double kappa = std::sqrt(2.0L * kPiL) / (6.0L * kPiL * kPiL);
  return kappa * s * std::sqrt(s);
}

}  // namespace

RemainderSample remainder(double s, const JumpSequence& spectrum) {
  RemainderSample sample;
  sample.s = s;
  sample.count = spectrum.count_total(s);
  const long double main = main_term_ld(s);
  sample.main = static_cast<double>(main);
  sample.remainder = static_cast<double>(static_cast<long double>(sample.count) - main);
  return sample;
}

double remainder_H_scaled(long double t, const JumpSequence& spectrum) {
  if (!(t >= 0.0L)) throw Error(ErrorKind::OutOfRange, "remainder_H_scaled needs t >= 0");
  const auto count = spectrum.count_typeII(static_cast<double>(2.0L * kPiL * t));
  return static_cast<double>(static_cast<long double>(count) - (2.0L / 3.0L) * t * std::sqrt(t) +
                             0.5L * t);
}

double remainder_torus(double s, const JumpSequence& spectrum) {
  const long double x = s;
  return static_cast<double>(static_cast<long double>(spectrum.count_torus(s)) - x / (4.0L * kPiL));
}

void write_remainder_csv(std::ostream& out, std::span<const RemainderSample> samples) {
  out << "s,count,main,remainder\n";
  for (const auto& r : samples) {
    out << format_real(r.s) << ',' << r.count << ',' << format_real(r.main) << ','
        << format_real(r.remainder) << '\n';
  }
}

}  // namespace hweyl
