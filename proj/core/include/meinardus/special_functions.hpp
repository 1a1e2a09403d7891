#ifndef MEINARDUS_SPECIAL_FUNCTIONS_HPP
#define MEINARDUS_SPECIAL_FUNCTIONS_HPP

#include <optional>

#include "meinardus/real.hpp"

namespace meinardus {

/// Gamma function for x > 0, via an upward shift and the Stirling series
/// with exact Bernoulli coefficients. Throws DomainError for x <= 0.
Real gamma(const Real& x);

/// log Gamma(x) for x > 0.
Real log_gamma(const Real& x);

/// Riemann zeta on the real line, x != 1 (PoleError at 1).
/// Nonnegative arguments use Euler-Maclaurin summation; negative arguments
/// are reflected through the functional equation.
Real zeta(const Real& x);

/// Derivative of zeta, by Richardson-extrapolated central differences of
/// zeta(). Intended for x <= 0 but valid for any x != 1.
Real zeta_prime(const Real& x);

/// Bernoulli number B_n with the B_1 = -1/2 convention.
Rational bernoulli(unsigned n);

/// zeta(-m) for integer m >= 0, exactly: (-1)^m B_{m+1} / (m+1).
Rational zeta_nonpositive_integer(unsigned m);

namespace detail {

/// Euler-Maclaurin evaluation valid for every real x != 1.
Real zeta_euler_maclaurin(const Real& x);

/// zeta(x) = 2^x pi^(x-1) sin(pi x / 2) Gamma(1-x) zeta(1-x), for x < 1.
Real zeta_reflected(const Real& x);

} // namespace detail

} // namespace meinardus

#endif
