#ifndef MEINARDUS_REAL_HPP
#define MEINARDUS_REAL_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace meinardus {

/// Variable-precision binary float backed by MPFR. New values take the
/// current working precision (see set_working_digits).
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline constexpr unsigned kDefaultDigits = 60;

/// Sets the global working precision in significant decimal digits. Values
/// created afterwards carry at least that many digits.
void set_working_digits(unsigned digits);
unsigned working_digits();

/// RAII guard that switches the working precision and restores it on exit.
class ScopedDigits {
public:
    explicit ScopedDigits(unsigned digits);
    ~ScopedDigits();
    ScopedDigits(const ScopedDigits&) = delete;
    ScopedDigits& operator=(const ScopedDigits&) = delete;

private:
    unsigned saved_;
};

Real to_real(const Rational& q);
Real to_real(const Integer& z);

/// Natural log of a positive rational, accurate even when numerator or
/// denominator exceed the floating exponent range of double.
Real log_rational(const Rational& q);

/// Parses "p/q", "-12", "0.25", "-1.5e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Integer text when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rational& q);

/// Deterministic scientific/fixed decimal rendering with `digits` significant
/// digits (0 selects the working precision).
std::string format_real(const Real& x, unsigned digits = 0);

Real pi();
Real ln2();

/// 10^-digits at the working precision.
Real working_epsilon();

bool is_integer(const Rational& q);

/// floor(q) and ceil(q) as signed 64-bit values; q must be in range.
long long floor_to_ll(const Rational& q);
long long ceil_to_ll(const Rational& q);

} // namespace meinardus

#endif
