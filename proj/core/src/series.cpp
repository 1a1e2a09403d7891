#include "meinardus/series.hpp"

#include <sstream>

#include "meinardus/errors.hpp"

namespace meinardus {

namespace {

Real drop_threshold()
{
    return pow(Real(10), -static_cast<long>(2 * working_digits() / 3));
}

} // namespace

GenSeries::GenSeries(Rational truncation) : truncation_(std::move(truncation))
{
    if (truncation_ < 0)
        throw DomainError("series truncation must be nonnegative");
}

GenSeries GenSeries::constant(const Real& c, const Rational& truncation)
{
    return monomial(c, Rational(0), truncation);
}

GenSeries GenSeries::monomial(const Real& c, const Rational& exponent, const Rational& truncation)
{
    GenSeries s(truncation);
    s.add_term(exponent, c);
    return s;
}

void GenSeries::add_term(const Rational& exponent, const Real& c)
{
    if (exponent < 0)
        throw DomainError("series exponents must be nonnegative");
    if (exponent > truncation_ || c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Real GenSeries::constant_term() const
{
    auto it = terms_.find(Rational(0));
    return it == terms_.end() ? Real(0) : it->second;
}

const Rational& GenSeries::min_exponent() const
{
    if (terms_.empty())
        throw DomainError("min_exponent of the zero series");
    return terms_.begin()->first;
}

Real GenSeries::evaluate(const Real& z) const
{
    Real sum = 0;
    for (const auto& [e, c] : terms_)
        sum += c * (e == 0 ? Real(1) : pow(z, to_real(e)));
    return sum;
}

GenSeries GenSeries::truncated(const Rational& new_truncation) const
{
    GenSeries out(new_truncation);
    for (const auto& [e, c] : terms_)
        if (e <= new_truncation)
            out.terms_.emplace(e, c);
    return out;
}

void GenSeries::require_same_truncation(const GenSeries& other) const
{
    if (truncation_ != other.truncation_)
        throw DomainError("series truncation mismatch (" + format_rational(truncation_) + " vs " +
                          format_rational(other.truncation_) + ")");
}

GenSeries& GenSeries::operator+=(const GenSeries& other)
{
    require_same_truncation(other);
    for (const auto& [e, c] : other.terms_)
        add_term(e, c);
    prune();
    return *this;
}

GenSeries& GenSeries::operator-=(const GenSeries& other)
{
    require_same_truncation(other);
    for (const auto& [e, c] : other.terms_)
        add_term(e, -c);
    prune();
    return *this;
}

GenSeries& GenSeries::operator*=(const Real& scalar)
{
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_)
        c *= scalar;
    return *this;
}

void GenSeries::prune()
{
    Real largest = 0;
    for (const auto& [e, c] : terms_)
        largest = std::max(largest, abs(c));
    if (largest == 0) {
        terms_.clear();
        return;
    }
    const Real floor_value = largest * drop_threshold();
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (abs(it->second) < floor_value)
            it = terms_.erase(it);
        else
            ++it;
    }
}

std::string GenSeries::to_string(unsigned digits) const
{
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first)
            out << " + ";
        first = false;
        out << format_real(c, digits);
        if (e != 0)
            out << "*z^(" << format_rational(e) << ")";
    }
    if (first)
        out << "0";
    return out.str();
}

GenSeries operator+(GenSeries a, const GenSeries& b)
{
    a += b;
    return a;
}

GenSeries operator-(GenSeries a, const GenSeries& b)
{
    a -= b;
    return a;
}

GenSeries operator*(GenSeries a, const Real& scalar)
{
    a *= scalar;
    return a;
}

GenSeries series_mul(const GenSeries& a, const GenSeries& b)
{
    if (a.truncation() != b.truncation())
        throw DomainError("series_mul: truncation mismatch");
    GenSeries out(a.truncation());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Rational e = ea + eb;
            if (e > a.truncation())
                break; // b's exponents are ascending
            out.add_term(e, ca * cb);
        }
    }
    GenSeries zero(a.truncation());
    out += zero; // normalise small coefficients
    return out;
}

Real binomial_coefficient(const Real& g, unsigned m)
{
    Real c = 1;
    for (unsigned i = 0; i < m; ++i) {
        c *= g - i;
        c /= i + 1;
    }
    return c;
}

GenSeries series_binpow(const GenSeries& u, const Real& g, const Rational& truncation)
{
    if (u.constant_term() != 0)
        throw DomainError("series_binpow: u must have zero constant term");
    GenSeries base = u.truncated(truncation);
    GenSeries out = GenSeries::constant(Real(1), truncation);
    if (base.empty())
        return out;
    const Rational& emin = base.min_exponent();
    // u^m has smallest exponent m*emin, so m <= truncation / emin.
    const long long mmax = floor_to_ll(truncation / emin);
    GenSeries power = GenSeries::constant(Real(1), truncation);
    Real coeff = 1;
    for (long long m = 1; m <= mmax; ++m) {
        power = series_mul(power, base);
        coeff *= g - (m - 1);
        coeff /= m;
        if (power.empty() || coeff == 0)
            break;
        out += power * coeff;
    }
    return out;
}

Real series_coeff(const GenSeries& a, const Rational& e)
{
    if (e > a.truncation())
        throw DomainError("series_coeff: exponent " + format_rational(e) + " exceeds truncation " +
                          format_rational(a.truncation()));
    auto it = a.terms().find(e);
    return it == a.terms().end() ? Real(0) : it->second;
}

} // namespace meinardus
