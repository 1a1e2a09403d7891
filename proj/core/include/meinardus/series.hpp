#ifndef MEINARDUS_SERIES_HPP
#define MEINARDUS_SERIES_HPP

#include <map>
#include <string>

#include "meinardus/real.hpp"

namespace meinardus {

/// Truncated series sum_e c_e z^e with exact nonnegative rational exponents
/// e <= truncation and working-precision coefficients. Terms whose
/// magnitude falls below 10^(-2/3 digits) of the largest are not stored.
class GenSeries {
public:
    using Terms = std::map<Rational, Real>;

    explicit GenSeries(Rational truncation);

    static GenSeries constant(const Real& c, const Rational& truncation);
    static GenSeries monomial(const Real& c, const Rational& exponent, const Rational& truncation);

    const Rational& truncation() const { return truncation_; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Adds c z^e; exponents above the truncation are discarded.
    void add_term(const Rational& exponent, const Real& c);

    Real constant_term() const;

    /// Smallest exponent with a stored coefficient; throws on the zero series.
    const Rational& min_exponent() const;

    /// Sum of c_e z^e at a numeric point z > 0.
    Real evaluate(const Real& z) const;

    /// Copy with a smaller truncation.
    GenSeries truncated(const Rational& new_truncation) const;

    GenSeries& operator+=(const GenSeries& other);
    GenSeries& operator-=(const GenSeries& other);
    GenSeries& operator*=(const Real& scalar);

    std::string to_string(unsigned digits = 20) const;

private:
    void prune();
    void require_same_truncation(const GenSeries& other) const;

    Rational truncation_;
    Terms terms_;
};

GenSeries operator+(GenSeries a, const GenSeries& b);
GenSeries operator-(GenSeries a, const GenSeries& b);
GenSeries operator*(GenSeries a, const Real& scalar);

/// Truncated product; both factors must share the truncation.
GenSeries series_mul(const GenSeries& a, const GenSeries& b);

/// (1 + u)^g = sum_m C(g, m) u^m for u without constant term, truncated at
/// `truncation`. The sum is finite because u's smallest exponent is positive.
GenSeries series_binpow(const GenSeries& u, const Real& g, const Rational& truncation);

/// Coefficient of z^e (0 when absent). Throws DomainError when e exceeds the
/// truncation, since the coefficient is then unknown.
Real series_coeff(const GenSeries& a, const Rational& e);

/// Generalized binomial coefficient C(g, m).
Real binomial_coefficient(const Real& g, unsigned m);

} // namespace meinardus

#endif
