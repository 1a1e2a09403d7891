#include "meinardus/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include "meinardus/errors.hpp"

namespace meinardus {

namespace {

// Even Bernoulli numbers B_2, B_4, ..., B_{2n} from the tangent numbers
// (Brent-Harvey in-place recurrence; integer arithmetic only).
std::vector<Rational> even_bernoulli(std::size_t n)
{
    std::vector<Integer> t(n + 1);
    if (n >= 1)
        t[1] = 1;
    for (std::size_t k = 2; k <= n; ++k)
        t[k] = t[k - 1] * static_cast<unsigned long>(k - 1);
    for (std::size_t k = 2; k <= n; ++k)
        for (std::size_t j = k; j <= n; ++j)
            t[j] = t[j - 1] * static_cast<unsigned long>(j - k) + t[j] * static_cast<unsigned long>(j - k + 2);

    std::vector<Rational> b(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Integer four_k = 1;
        four_k <<= static_cast<unsigned>(2 * k);
        Rational v(Integer(t[k] * static_cast<unsigned long>(2 * k)), Integer(four_k * (four_k - 1)));
        b[k - 1] = (k % 2 == 1) ? v : Rational(-v);
    }
    return b;
}

// Shared table of B_{2j}/(2j)!, grown on demand. Published tables are
// immutable; growth replaces the pointer.
std::shared_ptr<const std::vector<Rational>> bernoulli_over_factorial(std::size_t count)
{
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<Rational>> table;
    std::lock_guard lock(mutex);
    if (!table || table->size() < count) {
        std::size_t n = std::max<std::size_t>(count, table ? 2 * table->size() : 64);
        auto even = even_bernoulli(n);
        auto scaled = std::make_shared<std::vector<Rational>>(n);
        Integer fact = 1;
        for (std::size_t j = 1; j <= n; ++j) {
            fact *= static_cast<unsigned long>((2 * j - 1) * (2 * j));
            (*scaled)[j - 1] = even[j - 1] / Rational(fact);
        }
        table = scaled;
    }
    return table;
}

std::shared_ptr<const std::vector<Rational>> even_bernoulli_table(std::size_t count)
{
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<Rational>> table;
    std::lock_guard lock(mutex);
    if (!table || table->size() < count)
        table = std::make_shared<const std::vector<Rational>>(
            even_bernoulli(std::max<std::size_t>(count, table ? 2 * table->size() : 64)));
    return table;
}

bool is_integral(const Real& x)
{
    return x == floor(x);
}

} // namespace

Rational bernoulli(unsigned n)
{
    if (n == 0)
        return Rational(1);
    if (n == 1)
        return Rational(-1, 2);
    if (n % 2 == 1)
        return Rational(0);
    return (*even_bernoulli_table(n / 2))[n / 2 - 1];
}

Rational zeta_nonpositive_integer(unsigned m)
{
    Rational v = bernoulli(m + 1) / Rational(m + 1);
    return (m % 2 == 0) ? v : Rational(-v);
}

Real log_gamma(const Real& x)
{
    if (!(x > 0))
        throw DomainError("gamma: argument must be positive");
    const unsigned digits = working_digits();
    const Real shift_target = Real(digits);
    Real y = x;
    Real log_product = 0;
    while (y < shift_target) {
        log_product += log(y);
        y += 1;
    }
    const Real eps = working_epsilon() / 1000;
    Real sum = (y - Real(0.5)) * log(y) - y + log(2 * pi()) / 2;
    const Real y2 = y * y;
    Real ypow = y;
    auto table = even_bernoulli_table(digits + 16);
    for (std::size_t j = 1; j <= table->size(); ++j) {
        Real term = to_real((*table)[j - 1]) / (Real(2 * j * (2 * j - 1)) * ypow);
        sum += term;
        if (abs(term) < eps * abs(sum))
            break;
        ypow *= y2;
    }
    return sum - log_product;
}

Real gamma(const Real& x)
{
    if (!(x > 0))
        throw DomainError("gamma: argument must be positive");
    const unsigned digits = working_digits();
    Real y = x;
    Real product = 1;
    while (y < Real(digits)) {
        product *= y;
        y += 1;
    }
    Real lg = log_gamma(y);
    return exp(lg) / product;
}

namespace detail {

Real zeta_euler_maclaurin(const Real& x)
{
    if (x == 1)
        throw PoleError("zeta: pole at x = 1");
    const unsigned digits = working_digits();
    const long cutoff = static_cast<long>(digits) + 10 + static_cast<long>(ceil(abs(x)).convert_to<double>());
    const Real neg_x = -x;

    Real sum = 0;
    for (long k = 1; k < cutoff; ++k)
        sum += pow(Real(k), neg_x);

    const Real big_n = Real(cutoff);
    const Real n_pow = pow(big_n, neg_x); // N^{-x}
    sum += n_pow * big_n / (x - 1);
    sum += n_pow / 2;

    // Tail: sum_j B_{2j}/(2j)! * x(x+1)...(x+2j-2) * N^{-x-2j+1}
    const Real eps = working_epsilon() / 1000;
    const Real inv_n2 = 1 / (big_n * big_n);
    Real rising = x;           // x (x+1) ... (x+2j-2)
    Real power = n_pow / big_n; // N^{-x-2j+1} for j = 1
    std::size_t max_terms = 4 * static_cast<std::size_t>(cutoff);
    auto table = bernoulli_over_factorial(max_terms);
    Real previous = -1;
    for (std::size_t j = 1; j <= max_terms; ++j) {
        Real term = to_real((*table)[j - 1]) * rising * power;
        sum += term;
        Real mag = abs(term);
        if (mag <= eps * abs(sum))
            break;
        if (previous >= 0 && mag > previous)
            break; // asymptotic series started to diverge
        previous = mag;
        rising *= (x + Real(2 * j - 1)) * (x + Real(2 * j));
        power *= inv_n2;
    }
    return sum;
}

Real zeta_reflected(const Real& x)
{
    if (!(x < 1))
        throw DomainError("zeta_reflected: requires x < 1");
    if (x == 0)
        return Real(-0.5);
    if (x < 0 && is_integral(x) && is_integral(x / 2))
        return Real(0); // trivial zeros
    const Real one_minus = 1 - x;
    const Real p = pi();
    return pow(Real(2), x) * pow(p, x - 1) * sin(p * x / 2) * gamma(one_minus) * zeta_euler_maclaurin(one_minus);
}

} // namespace detail

Real zeta(const Real& x)
{
    if (x == 1)
        throw PoleError("zeta: pole at x = 1");
    if (x < 0)
        return detail::zeta_reflected(x);
    return detail::zeta_euler_maclaurin(x);
}

Real zeta_prime(const Real& x)
{
    if (x == 1)
        throw PoleError("zeta_prime: pole at x = 1");
    // Central differences D(h) with h_i = h0 / 2^i, extrapolated in h^2.
    Real h = abs(1 - x) / 4;
    if (h > Real(0.125))
        h = Real(0.125);
    constexpr int kLevels = 14;
    std::vector<std::vector<Real>> tableau(kLevels);
    Real best = 0;
    Real best_err = -1;
    const Real tol = working_epsilon() * 1000;
    for (int i = 0; i < kLevels; ++i) {
        tableau[i].resize(i + 1);
        tableau[i][0] = (zeta(x + h) - zeta(x - h)) / (2 * h);
        Real factor = 4;
        for (int k = 1; k <= i; ++k) {
            tableau[i][k] = tableau[i][k - 1] + (tableau[i][k - 1] - tableau[i - 1][k - 1]) / (factor - 1);
            factor *= 4;
        }
        if (i > 0) {
            Real err = abs(tableau[i][i] - tableau[i - 1][i - 1]);
            if (best_err < 0 || err < best_err) {
                best_err = err;
                best = tableau[i][i];
            }
            if (err <= tol * abs(best))
                break;
        }
        h /= 2;
    }
    return best;
}

} // namespace meinardus
