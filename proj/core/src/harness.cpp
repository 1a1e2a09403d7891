#include "meinardus/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "meinardus/errors.hpp"
#include "meinardus/exact_oracle.hpp"
#include "meinardus/expansion.hpp"
#include "meinardus/saddle.hpp"

namespace meinardus {

namespace {

std::size_t parse_size(std::string_view text)
{
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ParseError("ngrid: bad integer '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

std::string cell(const std::optional<Real>& x, unsigned digits)
{
    return x ? format_real(*x, digits) : std::string();
}

std::string cell(const std::optional<Rational>& x)
{
    return x ? format_rational(*x) : std::string();
}

nlohmann::ordered_json jcell(const std::optional<Real>& x, unsigned digits)
{
    return x ? nlohmann::ordered_json(format_real(*x, digits)) : nlohmann::ordered_json(nullptr);
}

std::string fmt_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

SolveOptions solve_options(const RunConfig& cfg, const DeltaExpansion& de, const HConstants& hc, std::size_t n)
{
    SolveOptions opt;
    opt.tol = cfg.tol;
    opt.scale = SaddleScale{hc.hhat.back(), de.rho_r};
    Real guess = evaluate_delta(de, Real(n));
    if (guess > 0)
        opt.initial_guess = guess;
    return opt;
}

std::size_t grid_max(const std::vector<std::size_t>& grid)
{
    if (grid.empty())
        throw PreconditionError("empty n-grid");
    return *std::max_element(grid.begin(), grid.end());
}

} // namespace

std::vector<std::size_t> parse_ngrid(std::string_view spec)
{
    std::set<std::size_t> values;
    auto parts = split(spec, ':');
    if (parts.size() == 4) {
        if (parts[2] != "geometric")
            throw ParseError("ngrid: expected start:stop:geometric:count");
        const std::size_t start = parse_size(parts[0]);
        const std::size_t stop = parse_size(parts[1]);
        const std::size_t count = parse_size(parts[3]);
        if (start == 0 || stop < start || count == 0)
            throw ParseError("ngrid: need 0 < start <= stop and count >= 1");
        if (count == 1) {
            values.insert(start);
        } else {
            const double ratio = std::log(static_cast<double>(stop) / start) / static_cast<double>(count - 1);
            for (std::size_t i = 0; i < count; ++i)
                values.insert(static_cast<std::size_t>(std::llround(start * std::exp(ratio * i))));
            values.insert(stop);
        }
    } else if (parts.size() == 1) {
        for (auto item : split(spec, ','))
            values.insert(parse_size(item));
    } else {
        throw ParseError("ngrid: unrecognised spec '" + std::string(spec) + "'");
    }
    return {values.begin(), values.end()};
}

std::vector<CompareRow> compare_table(const RunConfig& cfg)
{
    const std::size_t nmax = grid_max(cfg.ngrid);
    const DirichletData dd = dirichlet_data(cfg.family);
    const HConstants hc = h_constants(cfg.kind, dd);
    const DeltaExpansion de = delta_expansion(cfg.kind, dd);
    const AsymptoticFormula formula = asymptotic_formula(cfg.kind, dd);
    const std::vector<Real> b = eval_weights_real(cfg.family, nmax);

    std::optional<CountTable> counts;
    if (has_rational_weights(cfg.family))
        counts = exact_counts(cfg.kind, eval_weights(cfg.family, nmax), nmax);

    std::vector<CompareRow> rows;
    for (std::size_t n : cfg.ngrid) {
        CompareRow row;
        row.n = n;
        if (counts)
            row.c_exact = counts->counts[n];
        if (n == 0) {
            row.c_exact = Rational(1);
            rows.push_back(std::move(row));
            continue;
        }
        const Real log_asym = log_evaluate_formula(formula, Real(n));
        row.c_asym = exp(log_asym);
        const SaddlePoint sp = solve_delta(cfg.kind, b, n, solve_options(cfg, de, hc, n));
        row.delta_num = sp.delta;
        row.delta_exp = evaluate_delta(de, Real(n));
        if (counts && counts->counts[n] > 0) {
            row.log_ratio = log_rational(counts->counts[n]) - log_asym;
            row.ratio = exp(*row.log_ratio);
            row.llt_ratio = llt_probability_exact(*counts, sp) * sqrt(2 * pi() * sp.B2);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<DeltaRow> delta_table(const RunConfig& cfg)
{
    const std::size_t nmax = grid_max(cfg.ngrid);
    const DirichletData dd = dirichlet_data(cfg.family);
    const HConstants hc = h_constants(cfg.kind, dd);
    const DeltaExpansion de = delta_expansion(cfg.kind, dd);
    const std::vector<Real> b = eval_weights_real(cfg.family, nmax);

    std::vector<DeltaRow> rows;
    for (std::size_t n : cfg.ngrid) {
        if (n == 0)
            continue;
        const SaddlePoint sp = solve_delta(cfg.kind, b, n, solve_options(cfg, de, hc, n));
        DeltaRow row;
        row.n = n;
        row.delta_num = sp.delta;
        row.delta_exp = evaluate_delta(de, Real(n));
        row.scaled_gap = n * abs(row.delta_num - row.delta_exp);
        row.iterations = sp.iterations;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BeliefRow> belief_table(const RunConfig& cfg)
{
    const std::size_t nmax = grid_max(cfg.ngrid);
    const DirichletData dd = dirichlet_data(cfg.family);
    const AsymptoticFormula full = asymptotic_formula(cfg.kind, dd);
    const AsymptoticFormula single = single_pole_formula(cfg.kind, dd);

    std::optional<CountTable> counts;
    if (has_rational_weights(cfg.family))
        counts = exact_counts(cfg.kind, eval_weights(cfg.family, nmax), nmax);

    std::vector<BeliefRow> rows;
    for (std::size_t n : cfg.ngrid) {
        if (n == 0)
            continue;
        BeliefRow row;
        row.n = n;
        row.log_full = log_evaluate_formula(full, Real(n));
        row.log_single = log_evaluate_formula(single, Real(n));
        row.gap_predicted = row.log_full - row.log_single;
        if (counts && counts->counts[n] > 0) {
            row.log_exact = log_rational(counts->counts[n]);
            row.gap_exact = *row.log_exact - row.log_single;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Cond3Report condition3_check(const WeightFamily& family, Kind kind, const std::vector<double>& deltas,
                             const std::vector<double>& alphas, std::size_t K, double eps)
{
    constexpr double slack = 1e-12; // grids built in floating point overshoot 1/2
    for (double a : alphas)
        if (!(std::abs(a) <= 0.5 + slack))
            throw DomainError("condition3_check: |alpha| must not exceed 1/2");
    for (double d : deltas) {
        if (!(d > 0 && d < 1))
            throw DomainError("condition3_check: delta must lie in (0, 1)");
        if (static_cast<double>(K) < 10.0 / d)
            throw PreconditionError("condition3_check: truncation K must be at least 10/delta");
    }
    const DirichletData dd = dirichlet_data(family);
    const double rho_r = to_real(dd.rightmost_pole()).convert_to<double>();
    const double m = m_constant(kind).convert_to<double>();
    std::vector<double> b;
    b.reserve(K);
    for (const auto& x : eval_weights_real(family, K))
        b.push_back(x.convert_to<double>());

    Cond3Report report;
    bool any = false;
    for (double d : deltas) {
        for (double a : alphas) {
            if (std::abs(a) < std::sqrt(d)) {
                ++report.skipped;
                continue;
            }
            double lhs = 0;
            for (std::size_t k = 1; k <= K; ++k) {
                const double s = std::sin(std::numbers::pi * static_cast<double>(k) * std::clamp(a, -0.5, 0.5));
                lhs += b[k - 1] * std::exp(-static_cast<double>(k) * d) * s * s;
            }
            lhs *= 2;
            const double rhs = (1 + rho_r / 2 + eps) * m * std::abs(std::log(d));
            Cond3Point p{d, a, lhs, rhs, lhs - rhs};
            report.min_margin = any ? std::min(report.min_margin, p.margin) : p.margin;
            any = true;
            report.points.push_back(p);
        }
    }
    if (!any)
        throw DomainError("condition3_check: no (delta, alpha) pair with sqrt(delta) <= |alpha| <= 1/2");
    report.pass = report.min_margin > 0;
    return report;
}

std::string to_csv(const std::vector<CompareRow>& rows, unsigned digits)
{
    std::ostringstream out;
    out << "n,c_exact,c_asym,ratio,log_ratio,delta_num,delta_exp,llt_ratio\n";
    for (const auto& r : rows)
        out << r.n << ',' << cell(r.c_exact) << ',' << cell(r.c_asym, digits) << ',' << cell(r.ratio, digits)
            << ',' << cell(r.log_ratio, digits) << ',' << cell(r.delta_num, digits) << ','
            << cell(r.delta_exp, digits) << ',' << cell(r.llt_ratio, digits) << '\n';
    return out.str();
}

std::string to_json(const std::vector<CompareRow>& rows, unsigned digits)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["n"] = r.n;
        j["c_exact"] = r.c_exact ? nlohmann::ordered_json(format_rational(*r.c_exact)) : nullptr;
        j["c_asym"] = jcell(r.c_asym, digits);
        j["ratio"] = jcell(r.ratio, digits);
        j["log_ratio"] = jcell(r.log_ratio, digits);
        j["delta_num"] = jcell(r.delta_num, digits);
        j["delta_exp"] = jcell(r.delta_exp, digits);
        j["llt_ratio"] = jcell(r.llt_ratio, digits);
        doc.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::string to_csv(const std::vector<DeltaRow>& rows, unsigned digits)
{
    std::ostringstream out;
    out << "n,delta_num,delta_exp,scaled_gap\n";
    for (const auto& r : rows)
        out << r.n << ',' << format_real(r.delta_num, digits) << ',' << format_real(r.delta_exp, digits) << ','
            << format_real(r.scaled_gap, digits) << '\n';
    return out.str();
}

std::string to_json(const std::vector<DeltaRow>& rows, unsigned digits)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : rows)
        doc.push_back({{"n", r.n},
                       {"delta_num", format_real(r.delta_num, digits)},
                       {"delta_exp", format_real(r.delta_exp, digits)},
                       {"scaled_gap", format_real(r.scaled_gap, digits)}});
    return doc.dump(2) + "\n";
}

std::string to_csv(const std::vector<BeliefRow>& rows, unsigned digits)
{
    std::ostringstream out;
    out << "n,log_exact,log_full,log_single,gap_exact,gap_predicted\n";
    for (const auto& r : rows)
        out << r.n << ',' << cell(r.log_exact, digits) << ',' << format_real(r.log_full, digits) << ','
            << format_real(r.log_single, digits) << ',' << cell(r.gap_exact, digits) << ','
            << format_real(r.gap_predicted, digits) << '\n';
    return out.str();
}

std::string to_json(const std::vector<BeliefRow>& rows, unsigned digits)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : rows)
        doc.push_back({{"n", r.n},
                       {"log_exact", jcell(r.log_exact, digits)},
                       {"log_full", format_real(r.log_full, digits)},
                       {"log_single", format_real(r.log_single, digits)},
                       {"gap_exact", jcell(r.gap_exact, digits)},
                       {"gap_predicted", format_real(r.gap_predicted, digits)}});
    return doc.dump(2) + "\n";
}

std::string to_csv(const Cond3Report& report)
{
    std::ostringstream out;
    out << "delta,alpha,lhs,rhs,margin\n";
    for (const auto& p : report.points)
        out << fmt_double(p.delta) << ',' << fmt_double(p.alpha) << ',' << fmt_double(p.lhs) << ','
            << fmt_double(p.rhs) << ',' << fmt_double(p.margin) << '\n';
    out << "# min_margin=" << fmt_double(report.min_margin) << " pass=" << (report.pass ? "true" : "false")
        << " skipped=" << report.skipped << '\n';
    return out.str();
}

std::string to_json(const Cond3Report& report)
{
    nlohmann::ordered_json doc;
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const auto& p : report.points)
        points.push_back({{"delta", p.delta}, {"alpha", p.alpha}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"margin", p.margin}});
    doc["points"] = points;
    doc["min_margin"] = report.min_margin;
    doc["pass"] = report.pass;
    doc["skipped"] = report.skipped;
    return doc.dump(2) + "\n";
}

} // namespace meinardus
