#include "meinardus/weights.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "meinardus/errors.hpp"
#include "meinardus/special_functions.hpp"

namespace meinardus {

int indicator(Kind kind)
{
    return kind == Kind::Partition ? 1 : 0;
}

Real m_constant(Kind kind)
{
    switch (kind) {
    case Kind::Partition:
        return Real(4) / log(Real(5));
    case Kind::Selection:
        return Real(4);
    case Kind::Assembly:
        return Real(1);
    }
    throw DomainError("unknown structure kind");
}

Kind kind_from_int(int value)
{
    switch (value) {
    case 1:
        return Kind::Partition;
    case 2:
        return Kind::Selection;
    case 3:
        return Kind::Assembly;
    default:
        throw DomainError("structure kind must be 1, 2 or 3");
    }
}

namespace {

void validate_power_sum(const PowerSum& family)
{
    if (family.terms.empty())
        throw InvariantError("power family needs at least one term");
    std::set<Rational> seen;
    for (const auto& t : family.terms) {
        if (t.coeff <= 0)
            throw InvariantError("power family coefficients must be positive");
        if (t.exponent <= 0)
            throw InvariantError("power family exponents must be positive");
        if (!seen.insert(t.exponent).second)
            throw InvariantError("power family exponents must be distinct (duplicate r = " +
                                 format_rational(t.exponent) + ")");
    }
}

bool all_integer_exponents(const PowerSum& family)
{
    return std::all_of(family.terms.begin(), family.terms.end(),
                       [](const PowerTerm& t) { return is_integer(t.exponent); });
}

PowerSum expand_binomial(int l)
{
    // Coefficients of prod_{j=1..l} (k + j), lowest degree first.
    std::vector<Integer> poly{1};
    for (int j = 1; j <= l; ++j) {
        std::vector<Integer> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] += poly[i] * j;
        }
        poly = std::move(next);
    }
    Integer factorial = 1;
    for (int j = 2; j <= l; ++j)
        factorial *= j;
    PowerSum out;
    for (std::size_t m = poly.size(); m-- > 0;) {
        if (poly[m] == 0)
            continue;
        out.terms.push_back({Rational(poly[m], factorial), Rational(static_cast<long>(m) + 1)});
    }
    return out;
}

const PowerSum& as_power_sum(const WeightFamily& normalized)
{
    return std::get<PowerSum>(normalized);
}

} // namespace

void validate(const DirichletData& data)
{
    if (data.poles.empty())
        throw InvariantError("Dirichlet data needs at least one pole");
    if (data.poles.size() != data.residues.size())
        throw InvariantError("Dirichlet data: poles and residues differ in length");
    for (std::size_t i = 0; i < data.poles.size(); ++i) {
        if (data.poles[i] <= 0)
            throw InvariantError("Dirichlet data: poles must be positive");
        if (i > 0 && !(data.poles[i - 1] < data.poles[i]))
            throw InvariantError("Dirichlet data: poles must be strictly increasing");
        if (!(data.residues[i] > 0))
            throw InvariantError("Dirichlet data: residues must be positive");
    }
    if (!(data.c0 > 0) || data.c0 > 1)
        throw InvariantError("Dirichlet data: c0 must lie in (0, 1]");
}

void validate(const WeightFamily& family)
{
    std::visit(
        [](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerSum>) {
                validate_power_sum(f);
            } else if constexpr (std::is_same_v<T, Binomial>) {
                if (f.l < 1)
                    throw InvariantError("binomial family needs l >= 1");
            } else {
                if (f.b.empty())
                    throw InvariantError("tabulated family needs at least one weight");
                bool positive = false;
                for (const auto& v : f.b) {
                    if (v < 0)
                        throw InvariantError("tabulated weights must be nonnegative");
                    positive = positive || v > 0;
                }
                if (!positive)
                    throw InvariantError("tabulated family needs a positive weight");
                validate(f.dirichlet);
            }
        },
        family);
}

WeightFamily normalize_family(const WeightFamily& family)
{
    validate(family);
    if (const auto* bin = std::get_if<Binomial>(&family))
        return expand_binomial(bin->l);
    return family;
}

bool has_rational_weights(const WeightFamily& family)
{
    WeightFamily normalized = normalize_family(family);
    if (const auto* ps = std::get_if<PowerSum>(&normalized))
        return all_integer_exponents(*ps);
    return true;
}

namespace {

std::vector<Real> power_sum_values(const PowerSum& ps, std::size_t nmax)
{
    std::vector<Real> values(nmax);
    struct Prepared {
        Real coeff;
        Real exponent;
        long int_power;
        bool integral;
    };
    std::vector<Prepared> prepared;
    for (const auto& t : ps.terms) {
        Rational e = t.exponent - 1;
        bool integral = is_integer(e);
        prepared.push_back({to_real(t.coeff), to_real(e), integral ? numerator(e).convert_to<long>() : 0, integral});
    }
    for (std::size_t k = 1; k <= nmax; ++k) {
        Real sum = 0;
        const Real kr(static_cast<unsigned long>(k));
        for (const auto& p : prepared) {
            if (p.integral && p.int_power >= 0) {
                Real term = p.coeff;
                for (long i = 0; i < p.int_power; ++i)
                    term *= kr;
                sum += term;
            } else {
                sum += p.coeff * pow(kr, p.exponent);
            }
        }
        values[k - 1] = sum;
    }
    return values;
}

std::vector<Rational> power_sum_exact(const PowerSum& ps, std::size_t nmax)
{
    std::vector<Rational> out(nmax);
    for (std::size_t k = 1; k <= nmax; ++k) {
        Rational sum = 0;
        for (const auto& t : ps.terms) {
            long e = numerator(t.exponent).convert_to<long>() - 1;
            Integer kp = 1;
            mpz_ui_pow_ui(kp.backend().data(), static_cast<unsigned long>(k), static_cast<unsigned long>(e));
            sum += t.coeff * Rational(kp);
        }
        out[k - 1] = sum;
    }
    return out;
}

} // namespace

WeightTable eval_weights(const WeightFamily& family, std::size_t nmax)
{
    WeightFamily normalized = normalize_family(family);
    WeightTable table;
    if (const auto* tab = std::get_if<Tabulated>(&normalized)) {
        if (tab->b.size() < nmax)
            throw LengthError("tabulated family has " + std::to_string(tab->b.size()) + " weights, " +
                              std::to_string(nmax) + " requested");
        table.exact = true;
        table.exact_values.assign(tab->b.begin(), tab->b.begin() + static_cast<std::ptrdiff_t>(nmax));
        table.values.reserve(nmax);
        for (const auto& v : table.exact_values)
            table.values.push_back(to_real(v));
        return table;
    }
    const auto& ps = as_power_sum(normalized);
    if (all_integer_exponents(ps)) {
        table.exact = true;
        table.exact_values = power_sum_exact(ps, nmax);
        table.values.reserve(nmax);
        for (const auto& v : table.exact_values)
            table.values.push_back(to_real(v));
    } else {
        table.exact = false;
        table.values = power_sum_values(ps, nmax);
    }
    return table;
}

std::vector<Real> eval_weights_real(const WeightFamily& family, std::size_t nmax)
{
    WeightFamily normalized = normalize_family(family);
    if (const auto* tab = std::get_if<Tabulated>(&normalized)) {
        if (tab->b.size() < nmax)
            throw LengthError("tabulated family has " + std::to_string(tab->b.size()) + " weights, " +
                              std::to_string(nmax) + " requested");
        std::vector<Real> out;
        out.reserve(nmax);
        for (std::size_t k = 0; k < nmax; ++k)
            out.push_back(to_real(tab->b[k]));
        return out;
    }
    return power_sum_values(as_power_sum(normalized), nmax);
}

DirichletData dirichlet_data(const WeightFamily& family)
{
    WeightFamily normalized = normalize_family(family);
    if (const auto* tab = std::get_if<Tabulated>(&normalized))
        return tab->dirichlet;

    PowerSum ps = as_power_sum(normalized);
    std::sort(ps.terms.begin(), ps.terms.end(),
              [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
    for (std::size_t i = 1; i < ps.terms.size(); ++i)
        if (ps.terms[i].exponent == ps.terms[i - 1].exponent)
            throw InvariantError("duplicate exponent in power family");

    DirichletData dd;
    dd.d0 = 0;
    dd.d0_prime = 0;
    bool exact = true;
    Rational d0_exact = 0;
    for (const auto& t : ps.terms) {
        dd.poles.push_back(t.exponent);
        dd.residues.push_back(to_real(t.coeff));
        // D(s) = sum_j a_j zeta(s - r_j + 1)
        Rational arg = 1 - t.exponent;
        if (is_integer(arg)) {
            Rational z = zeta_nonpositive_integer(static_cast<unsigned>(-numerator(arg).convert_to<long>()));
            d0_exact += t.coeff * z;
            dd.d0 += to_real(t.coeff * z);
        } else {
            exact = false;
            dd.d0 += to_real(t.coeff) * zeta(to_real(arg));
        }
        dd.d0_prime += to_real(t.coeff) * zeta_prime(to_real(arg));
    }
    if (exact) {
        dd.d0_exact = d0_exact;
        dd.d0 = to_real(d0_exact);
    }
    validate(dd);
    return dd;
}

bool growth_bound_holds(const PowerSum& family)
{
    if (family.terms.empty())
        return false;
    Rational rho_r = family.terms.front().exponent;
    for (const auto& t : family.terms)
        rho_r = std::max(rho_r, t.exponent);
    // The largest power of k is rho_r - 1, strictly below rho_r.
    for (const auto& t : family.terms)
        if (!(t.exponent - 1 < rho_r))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Family documents

namespace {

using nlohmann::json;

Rational rational_field(const json& j, const char* what)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    throw ParseError(std::string("expected a rational string for '") + what + "'");
}

Real real_field(const json& j, const char* what)
{
    if (j.is_string())
        return to_real(parse_rational(j.get<std::string>()));
    if (j.is_number_integer())
        return Real(j.get<long long>());
    throw ParseError(std::string("expected a decimal string for '") + what + "'");
}

const json& require(const json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("family document is missing '") + key + "'");
    return *it;
}

DirichletData parse_dirichlet(const json& j)
{
    if (!j.is_object())
        throw ParseError("'dirichlet' must be an object");
    DirichletData dd;
    for (const auto& p : require(j, "poles"))
        dd.poles.push_back(rational_field(p, "poles"));
    for (const auto& r : require(j, "residues"))
        dd.residues.push_back(real_field(r, "residues"));
    const json& d0 = require(j, "d0");
    dd.d0_exact = rational_field(d0, "d0");
    dd.d0 = to_real(*dd.d0_exact);
    dd.d0_prime = real_field(require(j, "d0_prime"), "d0_prime");
    if (auto it = j.find("c0"); it != j.end())
        dd.c0 = real_field(*it, "c0");
    return dd;
}

std::string real_text(const Real& x)
{
    return format_real(x);
}

} // namespace

WeightFamily parse_family(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("family document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("family document must be a JSON object");
    const std::string type = require(doc, "type").get<std::string>();
    WeightFamily family;
    if (type == "power") {
        PowerSum ps;
        for (const auto& t : require(doc, "terms"))
            ps.terms.push_back({rational_field(require(t, "a"), "a"), rational_field(require(t, "r"), "r")});
        family = ps;
    } else if (type == "binomial") {
        const json& l = require(doc, "l");
        if (!l.is_number_integer())
            throw ParseError("'l' must be an integer");
        family = Binomial{l.get<int>()};
    } else if (type == "tabulated") {
        Tabulated tab;
        for (const auto& v : require(doc, "b"))
            tab.b.push_back(rational_field(v, "b"));
        tab.dirichlet = parse_dirichlet(require(doc, "dirichlet"));
        family = tab;
    } else {
        throw ParseError("unknown family type '" + type + "'");
    }
    validate(family);
    return family;
}

std::string family_to_json(const WeightFamily& family)
{
    json doc = std::visit(
        [](const auto& f) -> json {
            using T = std::decay_t<decltype(f)>;
            json j;
            if constexpr (std::is_same_v<T, PowerSum>) {
                j["type"] = "power";
                j["terms"] = json::array();
                for (const auto& t : f.terms)
                    j["terms"].push_back({{"a", format_rational(t.coeff)}, {"r", format_rational(t.exponent)}});
            } else if constexpr (std::is_same_v<T, Binomial>) {
                j["type"] = "binomial";
                j["l"] = f.l;
            } else {
                j["type"] = "tabulated";
                j["b"] = json::array();
                for (const auto& v : f.b)
                    j["b"].push_back(format_rational(v));
                json d;
                d["poles"] = json::array();
                for (const auto& p : f.dirichlet.poles)
                    d["poles"].push_back(format_rational(p));
                d["residues"] = json::array();
                for (const auto& r : f.dirichlet.residues)
                    d["residues"].push_back(real_text(r));
                d["d0"] = f.dirichlet.d0_exact ? format_rational(*f.dirichlet.d0_exact) : real_text(f.dirichlet.d0);
                d["d0_prime"] = real_text(f.dirichlet.d0_prime);
                d["c0"] = real_text(f.dirichlet.c0);
                j["dirichlet"] = d;
            }
            return j;
        },
        family);
    return doc.dump();
}

} // namespace meinardus
