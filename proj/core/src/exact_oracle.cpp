#include "meinardus/exact_oracle.hpp"

#include <sstream>

#include "meinardus/errors.hpp"

namespace meinardus {

namespace {

void require_weights(std::span<const Rational> b, std::size_t n)
{
    if (b.size() < n)
        throw LengthError("weight table has " + std::to_string(b.size()) + " entries, " + std::to_string(n) +
                          " needed");
}

Integer lcm_of_denominators(std::span<const Rational> values)
{
    Integer l = 1;
    for (const auto& v : values) {
        const Integer d = denominator(v);
        if (d != 1)
            mpz_lcm(l.backend().data(), l.backend().data(), d.backend().data());
    }
    return l;
}

} // namespace

std::vector<Rational> lambda_weights(Kind kind, std::span<const Rational> b, std::size_t n)
{
    require_weights(b, n);
    std::vector<Rational> lambda(n);
    if (kind == Kind::Assembly) {
        for (std::size_t m = 1; m <= n; ++m)
            lambda[m - 1] = b[m - 1] * static_cast<unsigned long>(m);
        return lambda;
    }
    for (std::size_t k = 1; k <= n; ++k) {
        if (b[k - 1] == 0)
            continue;
        const Rational kb = b[k - 1] * static_cast<unsigned long>(k);
        for (std::size_t m = k, q = 1; m <= n; m += k, ++q) {
            if (kind == Kind::Selection && q % 2 == 0)
                lambda[m - 1] -= kb;
            else
                lambda[m - 1] += kb;
        }
    }
    return lambda;
}

CountTable exact_counts(Kind kind, std::span<const Rational> b, std::size_t n)
{
    require_weights(b, n);
    CountTable table;
    table.kind = kind;
    table.b.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n));
    table.counts.resize(n + 1);
    table.counts[0] = 1;
    if (n == 0)
        return table;

    const std::vector<Rational> lambda = lambda_weights(kind, b, n);
    const Integer scale = lcm_of_denominators(lambda);

    if (scale == 1 && kind != Kind::Assembly) {
        // Integer weights: every c_n is an integer and the division by n is exact.
        std::vector<Integer> lam(n);
        for (std::size_t m = 0; m < n; ++m)
            lam[m] = numerator(lambda[m]);
        std::vector<Integer> c(n + 1);
        c[0] = 1;
        Integer acc;
        for (std::size_t i = 1; i <= n; ++i) {
            acc = 0;
            for (std::size_t m = 1; m <= i; ++m)
                acc += lam[m - 1] * c[i - m];
            mpz_divexact_ui(acc.backend().data(), acc.backend().data(), static_cast<unsigned long>(i));
            c[i] = acc;
        }
        for (std::size_t i = 0; i <= n; ++i)
            table.counts[i] = Rational(c[i]);
        return table;
    }

    // General case: with Lambda_m = l_m / L and c_n = e_n / (n! L^n), the
    // recurrence becomes
    //   e_n = sum_{m=1..n} l_m L^(m-1) (n-1)!/(n-m)! e_{n-m},
    // evaluated by Horner's rule from m = n down to m = 1.
    std::vector<Integer> lam(n);
    for (std::size_t m = 0; m < n; ++m)
        lam[m] = numerator(lambda[m] * Rational(scale));
    std::vector<Integer> e(n + 1);
    e[0] = 1;
    Integer acc;
    Integer factor;
    for (std::size_t i = 1; i <= n; ++i) {
        acc = lam[i - 1] * e[0];
        for (std::size_t m = i - 1; m >= 1; --m) {
            factor = scale * static_cast<unsigned long>(i - m);
            acc *= factor;
            acc += lam[m - 1] * e[i - m];
        }
        e[i] = acc;
    }
    Integer denom = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        denom *= scale * static_cast<unsigned long>(i);
        table.counts[i] = Rational(e[i], denom);
    }
    return table;
}

CountTable exact_counts(Kind kind, const WeightTable& weights, std::size_t n)
{
    if (!weights.exact)
        throw PreconditionError("exact oracle requires rational weights (non-integer exponents present)");
    return exact_counts(kind, std::span<const Rational>(weights.exact_values), n);
}

CountTable product_counts(Kind kind, std::span<const Rational> b, std::size_t n)
{
    if (n > kProductCountsLimit)
        throw PreconditionError("product_counts is limited to N <= 500");
    require_weights(b, n);
    CountTable table;
    table.kind = kind;
    table.b.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<Rational> poly(n + 1);
    poly[0] = 1;

    std::vector<Rational> factor;
    std::vector<Rational> next;
    for (std::size_t k = 1; k <= n; ++k) {
        const Rational& bk = b[k - 1];
        if (bk == 0)
            continue;
        // d_k(j) for j = 0..floor(n/k)
        const std::size_t jmax = n / k;
        factor.assign(jmax + 1, Rational(0));
        factor[0] = 1;
        for (std::size_t j = 1; j <= jmax; ++j) {
            Rational step;
            switch (kind) {
            case Kind::Partition: // C(b + j - 1, j)
                step = (bk + static_cast<unsigned long>(j - 1)) / Rational(static_cast<unsigned long>(j));
                break;
            case Kind::Selection: // C(b, j)
                step = (bk - static_cast<unsigned long>(j - 1)) / Rational(static_cast<unsigned long>(j));
                break;
            case Kind::Assembly: // b^j / j!
                step = bk / Rational(static_cast<unsigned long>(j));
                break;
            }
            factor[j] = factor[j - 1] * step;
        }
        next.assign(n + 1, Rational(0));
        for (std::size_t i = 0; i <= n; ++i) {
            if (poly[i] == 0)
                continue;
            for (std::size_t j = 0; j <= jmax && i + j * k <= n; ++j)
                if (factor[j] != 0)
                    next[i + j * k] += poly[i] * factor[j];
        }
        poly.swap(next);
    }
    table.counts = std::move(poly);
    return table;
}

std::string to_csv(const CountTable& table)
{
    std::ostringstream out;
    out << "n,count\n";
    for (std::size_t i = 0; i < table.counts.size(); ++i)
        out << i << ',' << format_rational(table.counts[i]) << '\n';
    return out.str();
}

} // namespace meinardus
