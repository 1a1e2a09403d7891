#include "meinardus/real.hpp"

#include <cctype>
#include <ios>

#include "meinardus/errors.hpp"

namespace meinardus {

namespace {

// The backend starts at a much lower precision than the library default.
[[maybe_unused]] const bool precision_initialised = [] {
    Real::default_precision(kDefaultDigits);
    return true;
}();

} // namespace

void set_working_digits(unsigned digits)
{
    if (digits < 10)
        throw DomainError("working precision must be at least 10 digits");
    Real::default_precision(digits);
}

unsigned working_digits()
{
    return Real::default_precision();
}

ScopedDigits::ScopedDigits(unsigned digits) : saved_(working_digits())
{
    set_working_digits(digits);
}

ScopedDigits::~ScopedDigits()
{
    Real::default_precision(saved_);
}

Real to_real(const Rational& q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

Real to_real(const Integer& z)
{
    Real r;
    mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
    return r;
}

Real log_rational(const Rational& q)
{
    if (q <= 0)
        throw DomainError("log of a non-positive rational");
    return log(to_real(Integer(numerator(q)))) - log(to_real(Integer(denominator(q))));
}

namespace {

Integer parse_integer_digits(std::string_view digits, std::string_view original)
{
    if (digits.empty())
        throw ParseError("malformed rational: '" + std::string(original) + "'");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("malformed rational: '" + std::string(original) + "'");
    // mpz string conversion would treat a leading 0 as an octal prefix
    Integer value;
    mpz_set_str(value.backend().data(), std::string(digits).c_str(), 10);
    return value;
}

Integer pow10(unsigned e)
{
    Integer r = 1;
    mpz_ui_pow_ui(r.backend().data(), 10, e);
    return r;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer p = parse_integer_digits(s.substr(0, slash), text);
        Integer q = parse_integer_digits(s.substr(slash + 1), text);
        if (q == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        result = Rational(p, q);
    } else {
        long long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            std::string_view ex = s.substr(e + 1);
            bool eneg = false;
            if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
                eneg = ex.front() == '-';
                ex.remove_prefix(1);
            }
            Integer ev = parse_integer_digits(ex, text);
            if (ev > 100000)
                throw ParseError("exponent out of range in '" + std::string(text) + "'");
            exponent = ev.convert_to<long long>();
            if (eneg)
                exponent = -exponent;
            s = s.substr(0, e);
        }
        std::string digits;
        long long frac = 0;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            std::string_view ip = s.substr(0, dot);
            std::string_view fp = s.substr(dot + 1);
            if (ip.empty() && fp.empty())
                throw ParseError("malformed rational: '" + std::string(text) + "'");
            digits = std::string(ip) + std::string(fp);
            frac = static_cast<long long>(fp.size());
        } else {
            digits = std::string(s);
        }
        Integer mantissa = parse_integer_digits(digits, text);
        long long shift = exponent - frac;
        if (shift >= 0)
            result = Rational(mantissa * pow10(static_cast<unsigned>(shift)));
        else
            result = Rational(mantissa, pow10(static_cast<unsigned>(-shift)));
    }
    return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string format_real(const Real& x, unsigned digits)
{
    if (digits == 0)
        digits = working_digits();
    return x.str(static_cast<std::streamsize>(digits), std::ios_base::fmtflags(0));
}

Real pi()
{
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Real ln2()
{
    Real r;
    mpfr_const_log2(r.backend().data(), MPFR_RNDN);
    return r;
}

Real working_epsilon()
{
    return pow(Real(10), -static_cast<long>(working_digits()));
}

bool is_integer(const Rational& q)
{
    return denominator(q) == 1;
}

long long floor_to_ll(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.backend().data(), numerator(q).backend().data(), denominator(q).backend().data());
    return r.convert_to<long long>();
}

long long ceil_to_ll(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.backend().data(), numerator(q).backend().data(), denominator(q).backend().data());
    return r.convert_to<long long>();
}

} // namespace meinardus
