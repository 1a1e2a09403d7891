#include "meinardus/expansion.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "meinardus/errors.hpp"
#include "meinardus/special_functions.hpp"

namespace meinardus {

namespace {

// Pole gaps rho_r - rho_k for k = 0..r-1 with rho_0 = 0.
std::vector<Rational> pole_gaps(const std::vector<Rational>& poles)
{
    std::vector<Rational> gaps;
    const Rational& top = poles.back();
    gaps.push_back(top);
    for (std::size_t k = 0; k + 1 < poles.size(); ++k)
        gaps.push_back(top - poles[k]);
    return gaps;
}

Rational pole_at(const DirichletData& dd, std::size_t l)
{
    return l == 0 ? Rational(0) : dd.poles[l - 1];
}

Real relative_floor(const Real& scale)
{
    return abs(scale) * pow(Real(10), -static_cast<long>(2 * working_digits() / 3));
}

// hhat_k z^g (Q^g - Q(0)^g), the part of the saddle condition beyond P(z),
// summed over k < r.
GenSeries v_part(const GenSeries& s, const DirichletData& dd, const HConstants& hc, const Real& q0)
{
    const std::size_t r = dd.pole_count();
    const Rational& rho_r = dd.rightmost_pole();
    const Rational R = rho_r + 1;
    const Real hr = hc.hhat[r];

    GenSeries u = s;
    u.add_term(Rational(0), -hr);
    u *= Real(1) / hr;

    GenSeries out(R);
    for (std::size_t k = 0; k < r; ++k) {
        if (hc.hhat[k] == 0)
            continue;
        const Rational g = rho_r - pole_at(dd, k);
        const Real scale = hc.hhat[k] * pow(q0, to_real(g));
        GenSeries pw = series_binpow(u, to_real(g / R), R - g);
        for (const auto& [e, c] : pw.terms())
            if (e > 0)
                out.add_term(e + g, scale * c);
    }
    return out;
}

struct SaddleSeries {
    Real q0;
    GenSeries y; // (1 + (P + V)/hhat_r)^(1/(rho_r+1)), truncated at rho_r
};

SaddleSeries saddle_series(Kind kind, const DirichletData& dd, const HConstants& hc)
{
    const Rational& rho_r = dd.rightmost_pole();
    const Rational R = rho_r + 1;
    const Real hr = hc.hhat.back();
    GenSeries q = q_expansion(kind, dd, upsilon_sets(dd.poles), hc);
    GenSeries u = q.truncated(rho_r);
    u.add_term(Rational(0), -hr);
    u *= Real(1) / hr;
    return {pow(hr, Real(1) / to_real(R)), series_binpow(u, Real(1) / to_real(R), rho_r)};
}

std::vector<Real> miller_power(const std::vector<Real>& psi, const Real& p, std::size_t m_max)
{
    std::vector<Real> f(m_max + 1, Real(0));
    f[0] = 1;
    for (std::size_t m = 1; m <= m_max; ++m) {
        Real acc = 0;
        for (std::size_t j = 1; j <= m && j < psi.size(); ++j)
            acc += ((p + 1) * j - m) * psi[j] * f[m - j];
        f[m] = acc / m;
    }
    return f;
}

} // namespace

UpsilonSets upsilon_sets(const std::vector<Rational>& poles)
{
    if (poles.empty())
        throw PreconditionError("upsilon_sets: no poles");
    for (std::size_t i = 0; i < poles.size(); ++i) {
        if (poles[i] <= 0)
            throw PreconditionError("upsilon_sets: poles must be positive");
        if (i > 0 && poles[i] <= poles[i - 1])
            throw PreconditionError("upsilon_sets: poles must be strictly increasing");
    }
    const std::vector<Rational> gaps = pole_gaps(poles);
    const Rational R = poles.back() + 1;

    std::vector<long long> bound;
    for (const auto& g : gaps)
        bound.push_back(ceil_to_ll(R / g));

    std::set<Rational> alphas;
    std::function<void(std::size_t, const Rational&, long long)> walk =
        [&](std::size_t k, const Rational& sum, long long count) {
            if (k == gaps.size()) {
                if (count >= 2 && sum > 0 && sum <= R)
                    alphas.insert(sum);
                return;
            }
            Rational s = sum;
            for (long long d = 0; d <= bound[k]; ++d) {
                if (s > R)
                    break;
                walk(k + 1, s, count + d);
                s += gaps[k];
            }
        };
    walk(0, Rational(0), 0);

    UpsilonSets out;
    out.alphas.assign(alphas.begin(), alphas.end());
    std::set<Rational> lambdas = alphas;
    lambdas.insert(gaps.begin(), gaps.end());
    out.lambdas.assign(lambdas.begin(), lambdas.end());
    return out;
}

HConstants h_constants(Kind kind, const DirichletData& dd)
{
    validate(dd);
    const std::size_t r = dd.pole_count();
    HConstants hc;
    hc.h.resize(r + 1);
    hc.hhat.resize(r + 1);
    for (std::size_t l = 1; l <= r; ++l) {
        const Real rho = to_real(dd.poles[l - 1]);
        Real h = dd.residues[l - 1] * gamma(rho);
        if (kind != Kind::Assembly)
            h *= zeta(rho + 1);
        if (kind == Kind::Selection)
            h *= 1 - pow(Real(2), -rho);
        hc.h[l] = h;
        hc.hhat[l] = rho * h;
    }
    switch (kind) {
    case Kind::Partition:
        hc.h[0] = dd.d0_prime;
        hc.hhat[0] = dd.d0;
        break;
    case Kind::Selection:
        hc.h[0] = dd.d0 * ln2();
        hc.hhat[0] = 0;
        break;
    case Kind::Assembly:
        hc.h[0] = dd.d0;
        hc.hhat[0] = 0;
        break;
    }
    if (hc.hhat[r] <= 0)
        throw InvariantError("h_constants: hhat_r must be positive");
    return hc;
}

GenSeries q_expansion(Kind, const DirichletData& dd, const UpsilonSets& sets, const HConstants& hc)
{
    const std::size_t r = dd.pole_count();
    const Rational& rho_r = dd.rightmost_pole();
    const Rational R = rho_r + 1;
    const Real hr = hc.hhat[r];
    const Real q0 = pow(hr, Real(1) / to_real(R));

    GenSeries s = GenSeries::constant(hr, R);
    for (std::size_t k = 0; k < r; ++k) {
        const Rational g = rho_r - pole_at(dd, k);
        s.add_term(g, hc.hhat[k] * pow(q0, to_real(g)));
    }
    // Each B_m only sees coefficients below alpha_m, so one pass in
    // ascending order settles V(z).
    for (const auto& alpha : sets.alphas) {
        GenSeries w = v_part(s, dd, hc, q0);
        s.add_term(alpha, series_coeff(w, alpha));
    }
    return s;
}

GenSeries saddle_condition_residual(const GenSeries& q_power, const DirichletData& dd, const HConstants& hc)
{
    const std::size_t r = dd.pole_count();
    const Rational& rho_r = dd.rightmost_pole();
    const Rational R = q_power.truncation();
    const Real hr = hc.hhat[r];
    const Real q0 = pow(hr, Real(1) / to_real(rho_r + 1));

    // Q / Q(0) - 1 from the (rho_r+1)-th root, then Q^g from Q itself.
    GenSeries u = q_power;
    u.add_term(Rational(0), -hr);
    u *= Real(1) / hr;
    GenSeries q_ratio = series_binpow(u, Real(1) / to_real(rho_r + 1), R);
    q_ratio.add_term(Rational(0), Real(-1));

    GenSeries out = q_power;
    out.add_term(Rational(0), -hr);
    for (std::size_t k = 0; k < r; ++k) {
        const Rational g = rho_r - pole_at(dd, k);
        GenSeries qg = series_binpow(q_ratio, to_real(g), R) * (hc.hhat[k] * pow(q0, to_real(g)));
        for (const auto& [e, c] : qg.terms())
            out.add_term(e + g, -c);
    }
    return out;
}

Real DeltaExpansion::coefficient(const Rational& lambda) const
{
    for (const auto& t : terms)
        if (t.lambda == lambda)
            return t.K;
    return Real(0);
}

DeltaExpansion delta_expansion(Kind kind, const DirichletData& dd)
{
    HConstants hc = h_constants(kind, dd);
    SaddleSeries ss = saddle_series(kind, dd, hc);
    DeltaExpansion out;
    out.rho_r = dd.rightmost_pole();
    out.lead = ss.q0;
    for (const auto& [e, c] : ss.y.terms())
        if (e > 0)
            out.terms.push_back({e, ss.q0 * c});
    return out;
}

DeltaExpansion equidistant_psi(Kind kind, const DirichletData& dd)
{
    validate(dd);
    const std::size_t r = dd.pole_count();
    const Rational a = dd.poles.front();
    for (std::size_t l = 1; l <= r; ++l)
        if (dd.poles[l - 1] != a * static_cast<long>(l))
            throw PreconditionError("equidistant_psi: poles are not l*a, l = 1..r");

    HConstants hc = h_constants(kind, dd);
    const Rational R = dd.rightmost_pole() + 1;
    const Real R_real = to_real(R);
    const Real hr = hc.hhat[r];
    const Real q0 = pow(hr, Real(1) / R_real);

    // Q = Q(0) Psi(w), w = z^a; delta = z Q.
    std::vector<Real> psi(r + 1, Real(0));
    psi[0] = 1;
    for (std::size_t s = 1; s <= r; ++s) {
        // psi[s] is still 0, so [w^s] Psi^R lacks exactly its R psi_s part.
        Real q_s = hr * miller_power(psi, R_real, s)[s];
        for (std::size_t j = 1; j <= s; ++j) {
            const std::size_t k = r - j;
            if (hc.hhat[k] == 0)
                continue;
            const Real p = to_real(a * static_cast<long>(j));
            q_s -= hc.hhat[k] * pow(q0, p) * miller_power(psi, p, s - j)[s - j];
        }
        psi[s] = -q_s / (R_real * hr);
    }

    DeltaExpansion out;
    out.rho_r = dd.rightmost_pole();
    out.lead = q0;
    for (std::size_t s = 1; s <= r; ++s)
        if (psi[s] != 0)
            out.terms.push_back({a * static_cast<long>(s), q0 * psi[s]});
    return out;
}

Real evaluate_delta(const DeltaExpansion& e, const Real& n)
{
    const Real z = pow(n, Real(-1) / to_real(e.rho_r + 1));
    Real out = e.lead * z;
    for (const auto& t : e.terms)
        out += t.K * pow(z, to_real(1 + t.lambda));
    return out;
}

AsymptoticFormula asymptotic_formula(Kind kind, const DirichletData& dd)
{
    HConstants hc = h_constants(kind, dd);
    SaddleSeries ss = saddle_series(kind, dd, hc);
    const std::size_t r = dd.pole_count();
    const Rational& rho_r = dd.rightmost_pole();
    const Rational R = rho_r + 1;
    const Real hr = hc.hhat[r];
    const Real& q0 = ss.q0;

    std::map<Rational, Real, std::greater<>> by_power;
    auto add = [&](const Rational& p, const Real& c) {
        if (p < 0)
            return; // o(1)
        auto [it, inserted] = by_power.try_emplace(p, c);
        if (!inserted)
            it->second += c;
    };

    // n delta_n = q0 n^(rho_r/R) Y(z)
    add(rho_r / R, q0);
    for (const auto& [e, c] : ss.y.terms())
        if (e > 0)
            add((rho_r - e) / R, q0 * c);

    // h_l delta^(-rho_l) = h_l q0^(-rho_l) n^(rho_l/R) Y^(-rho_l)
    GenSeries y_minus_one = ss.y;
    y_minus_one.add_term(Rational(0), Real(-1));
    for (std::size_t l = 1; l <= r; ++l) {
        const Rational& rho = dd.poles[l - 1];
        const Real scale = hc.h[l] * pow(q0, -to_real(rho));
        GenSeries yp = series_binpow(y_minus_one, -to_real(rho), rho);
        for (const auto& [e, c] : yp.terms())
            add((rho - e) / R, scale * c);
    }

    Real log_h = hc.h[0];
    Real n_exp = -to_real(2 + rho_r) / to_real(2 * R);
    std::optional<Rational> n_exp_exact = Rational(-(2 + rho_r) / (2 * R));

    // -D(0) log delta for partitions
    if (kind == Kind::Partition) {
        log_h -= dd.d0 * log(q0);
        n_exp += dd.d0 / to_real(R);
        if (dd.d0_exact)
            *n_exp_exact += *dd.d0_exact / R;
        else
            n_exp_exact.reset();
    }

    AsymptoticFormula f;
    f.kind = kind;
    f.K2 = dd.residues.back() * gamma(to_real(rho_r + 2));
    if (kind != Kind::Assembly)
        f.K2 *= zeta(to_real(rho_r + 1));
    if (kind == Kind::Selection)
        f.K2 *= 1 - pow(Real(2), -to_real(rho_r));
    log_h += -log(2 * pi() * f.K2) / 2 + to_real(2 + rho_r) / to_real(2 * R) * log(hr);

    Real largest = 0;
    for (const auto& [p, c] : by_power)
        if (p > 0)
            largest = std::max(largest, abs(c));
    const Real floor_value = relative_floor(largest);
    for (const auto& [p, c] : by_power) {
        if (p == 0)
            log_h += c;
        else if (abs(c) >= floor_value)
            f.exp_terms.push_back({p, c});
    }
    f.H = exp(log_h);
    f.n_exponent = n_exp;
    f.n_exponent_exact = n_exp_exact;
    if (f.exp_terms.empty() || f.exp_terms.front().power != rho_r / R || f.exp_terms.front().coeff <= 0)
        throw InvariantError("asymptotic_formula: leading coefficient must be positive");
    return f;
}

AsymptoticFormula single_pole_formula(Kind kind, const DirichletData& dd)
{
    validate(dd);
    if (dd.pole_count() == 1)
        return asymptotic_formula(kind, dd);
    const Rational rho = dd.rightmost_pole();
    const Real a = dd.residues.back();
    DirichletData one;
    one.poles = {rho};
    one.residues = {a};
    one.c0 = dd.c0;
    const Rational arg = 1 - rho;
    if (is_integer(arg))
        one.d0 = a * to_real(zeta_nonpositive_integer(static_cast<unsigned>(-numerator(arg).convert_to<long>())));
    else
        one.d0 = a * zeta(to_real(arg));
    one.d0_prime = a * zeta_prime(to_real(arg));
    return asymptotic_formula(kind, one);
}

Real log_evaluate_formula(const AsymptoticFormula& f, const Real& n)
{
    if (n < 1)
        throw DomainError("evaluate_formula: n must be >= 1");
    const Real ln_n = log(n);
    Real out = log(f.H) + f.n_exponent * ln_n;
    for (const auto& t : f.exp_terms)
        out += t.coeff * exp(to_real(t.power) * ln_n);
    return out;
}

Real evaluate_formula(const AsymptoticFormula& f, const Real& n)
{
    return exp(log_evaluate_formula(f, n));
}

std::string formula_to_json(const AsymptoticFormula& f, unsigned digits)
{
    nlohmann::ordered_json doc;
    doc["kind"] = static_cast<int>(f.kind);
    doc["H"] = format_real(f.H, digits);
    doc["n_exponent"] = f.n_exponent_exact ? format_rational(*f.n_exponent_exact) : format_real(f.n_exponent, digits);
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& t : f.exp_terms)
        terms.push_back({{"power", format_rational(t.power)}, {"coeff", format_real(t.coeff, digits)}});
    doc["exp_terms"] = terms;
    doc["K2"] = format_real(f.K2, digits);
    doc["note"] = "exp_terms merge the n*delta_n and log f_n contributions at equal powers";
    return doc.dump(2);
}

} // namespace meinardus
