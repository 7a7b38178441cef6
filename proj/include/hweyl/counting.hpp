#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

#include "hweyl/spectrum.hpp"

namespace hweyl {

/// Leading Weyl coefficient for Γ₁\H₁ with g = diag(1, 1, 2π):
/// kappa = vol(B₃)·vol(M)/(2π)³ with vol(M) = √(det g) = √(2π).
struct WeylConstants {
  double kappa;
  double volume;
};

WeylConstants weyl_constants();

/// kappa · s^{3/2}.
double main_term(double s);

struct RemainderSample {
  double s = 0.0;
  std::uint64_t count = 0;
  double main = 0.0;
  double remainder = 0.0;
};

/// R(s) = N(s) - kappa s^{3/2}. The subtraction is carried out in extended
/// precision; `main` is the rounded main term, so count - main can differ from
/// `remainder` by an ulp of `main`.
RemainderSample remainder(double s, const JumpSequence& spectrum);

/// R_H(2πt) = N_H(2πt) - (2/3) t^{3/2} + t/2, the type-II remainder on the
/// rescaled axis t = s / 2π. t is taken in long double so a caller converting
/// from s need not round s / 2π to double (which alone moves the result by
/// ~10^-8 at s ~ 10^6).
double remainder_H_scaled(long double t, const JumpSequence& spectrum);

/// N_T(s) - s / 4π.
double remainder_torus(double s, const JumpSequence& spectrum);

/// CSV with header `s,count,main,remainder`; reals carry 17 significant digits.
void write_remainder_csv(std::ostream& out, std::span<const RemainderSample> samples);

}  // namespace hweyl
