#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meinardus/errors.hpp"
#include "meinardus/exact_oracle.hpp"
#include "meinardus/expansion.hpp"
#include "meinardus/harness.hpp"
#include "meinardus/real.hpp"
#include "meinardus/weights.hpp"

namespace meinardus::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family;
    int kind = 1;
    std::size_t n = 0;
    std::string ngrid;
    unsigned precision = kDefaultDigits;
    std::string tol = "1e-30";
    std::string format = "csv";
    std::string out;
    bool single = false;
    bool terms = false;
    std::string deltas = "0.01";
    std::string alphas = "0.1:0.5:9";
    std::size_t K = 0;
    double eps = 0.1;
};

void add_common(CLI::App* sub, Options& o, bool needs_family = true)
{
    auto* fam = sub->add_option("--family", o.family, "Weight family as JSON");
    if (needs_family)
        fam->required();
    sub->add_option("--kind", o.kind, "1 partitions, 2 selections, 3 assemblies")->check(CLI::Range(1, 3));
    sub->add_option("--precision", o.precision, "Working precision in decimal digits")->check(CLI::Range(10u, 10000u));
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "Output path (default stdout)");
}

std::vector<double> parse_double_list(const std::string& text, char sep = ',')
{
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad number '" + item + "'");
        }
    }
    if (values.empty())
        throw UsageError("empty number list");
    return values;
}

// "lo:hi:count" gives count equally spaced values; otherwise a list.
std::vector<double> parse_alpha_grid(const std::string& text)
{
    if (text.find(':') == std::string::npos)
        return parse_double_list(text);
    const std::vector<double> parts = parse_double_list(text, ':');
    if (parts.size() != 3 || parts[2] < 1 || parts[2] != std::floor(parts[2]))
        throw UsageError("alpha grid must be lo:hi:count");
    const auto count = static_cast<std::size_t>(parts[2]);
    std::vector<double> values;
    for (std::size_t i = 0; i < count; ++i)
        values.push_back(count == 1 ? parts[0]
                                    : parts[0] + (parts[1] - parts[0]) * static_cast<double>(i) /
                                                     static_cast<double>(count - 1));
    return values;
}

RunConfig make_config(const Options& o)
{
    RunConfig cfg;
    try {
        cfg.family = parse_family(o.family);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    cfg.kind = kind_from_int(o.kind);
    cfg.digits = o.precision;
    cfg.format = o.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    cfg.out = o.out;
    try {
        cfg.tol = Real(o.tol);
    } catch (const std::exception&) {
        throw UsageError("bad --tol value '" + o.tol + "'");
    }
    if (!o.ngrid.empty()) {
        try {
            cfg.ngrid = parse_ngrid(o.ngrid);
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
    } else if (o.n > 0) {
        cfg.ngrid = {o.n};
    }
    return cfg;
}

std::vector<std::size_t> require_grid(const RunConfig& cfg)
{
    if (cfg.ngrid.empty())
        throw UsageError("--ngrid (or --n) is required");
    return cfg.ngrid;
}

std::string count_document(const CountTable& table, OutputFormat format)
{
    if (format == OutputFormat::Csv)
        return to_csv(table);
    nlohmann::ordered_json doc;
    doc["kind"] = static_cast<int>(table.kind);
    nlohmann::ordered_json counts = nlohmann::ordered_json::array();
    for (const auto& c : table.counts)
        counts.push_back(format_rational(c));
    doc["counts"] = counts;
    return doc.dump(2) + "\n";
}

std::string expansion_document(const DeltaExpansion& e, OutputFormat format, unsigned digits)
{
    if (format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "lambda,K\n";
        out << "lead," << format_real(e.lead, digits) << '\n';
        for (const auto& t : e.terms)
            out << format_rational(t.lambda) << ',' << format_real(t.K, digits) << '\n';
        return out.str();
    }
    nlohmann::ordered_json doc;
    doc["rho_r"] = format_rational(e.rho_r);
    doc["lead"] = format_real(e.lead, digits);
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& t : e.terms)
        terms.push_back({{"lambda", format_rational(t.lambda)}, {"K", format_real(t.K, digits)}});
    doc["terms"] = terms;
    return doc.dump(2) + "\n";
}

template <typename Rows>
std::string render(const Rows& rows, const RunConfig& cfg)
{
    return cfg.format == OutputFormat::Json ? to_json(rows, cfg.digits) : to_csv(rows, cfg.digits);
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw Error("cannot open output file '" + path + "'");
    file << text;
}

std::string run_selected(const CLI::App& app, const Options& o)
{
    RunConfig cfg = make_config(o);
    ScopedDigits digits(cfg.digits);
    if (app.got_subcommand("count")) {
        if (o.n == 0 && o.ngrid.empty())
            throw UsageError("count needs --n");
        const std::size_t n = o.n > 0 ? o.n : cfg.ngrid.back();
        return count_document(exact_counts(cfg.kind, eval_weights(cfg.family, n), n), cfg.format);
    }
    if (app.got_subcommand("formula")) {
        const DirichletData dd = dirichlet_data(cfg.family);
        const AsymptoticFormula f = o.single ? single_pole_formula(cfg.kind, dd) : asymptotic_formula(cfg.kind, dd);
        return formula_to_json(f, cfg.digits) + "\n";
    }
    if (app.got_subcommand("delta")) {
        if (o.terms)
            return expansion_document(delta_expansion(cfg.kind, dirichlet_data(cfg.family)), cfg.format, cfg.digits);
        require_grid(cfg);
        return render(delta_table(cfg), cfg);
    }
    if (app.got_subcommand("compare")) {
        require_grid(cfg);
        return render(compare_table(cfg), cfg);
    }
    if (app.got_subcommand("belief")) {
        require_grid(cfg);
        return render(belief_table(cfg), cfg);
    }
    // check-cond3
    const std::vector<double> deltas = parse_double_list(o.deltas);
    const std::vector<double> alphas = parse_alpha_grid(o.alphas);
    std::size_t K = o.K;
    if (K == 0) {
        double smallest = deltas.front();
        for (double d : deltas)
            smallest = std::min(smallest, d);
        K = static_cast<std::size_t>(std::ceil(20.0 / smallest));
    }
    Cond3Report report = condition3_check(cfg.family, cfg.kind, deltas, alphas, K, o.eps);
    return cfg.format == OutputFormat::Json ? to_json(report) : to_csv(report);
}

} // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Multi-pole Meinardus asymptotics for weighted partitions, selections and assemblies", "meinardus"};
    app.require_subcommand(1);
    Options o;

    auto* count = app.add_subcommand("count", "Exact counts c_0..c_n");
    add_common(count, o);
    count->add_option("--n", o.n, "Largest n")->required();

    auto* delta = app.add_subcommand("delta", "Numeric and expanded saddle point over an n-grid");
    add_common(delta, o);
    delta->add_option("--ngrid", o.ngrid, "List a,b,c or start:stop:geometric:count");
    delta->add_option("--n", o.n, "Single n");
    delta->add_option("--tol", o.tol, "Relative residual tolerance");
    delta->add_flag("--terms", o.terms, "Print the expansion coefficients instead");

    auto* formula = app.add_subcommand("formula", "Asymptotic formula document");
    add_common(formula, o);
    formula->add_flag("--single", o.single, "Use the rightmost pole only");

    auto* compare = app.add_subcommand("compare", "Exact counts against the formula");
    add_common(compare, o);
    compare->add_option("--ngrid", o.ngrid, "List a,b,c or start:stop:geometric:count");
    compare->add_option("--n", o.n, "Single n");
    compare->add_option("--tol", o.tol, "Relative residual tolerance");

    auto* cond3 = app.add_subcommand("check-cond3", "Numeric look at the non-lattice condition");
    add_common(cond3, o);
    cond3->add_option("--deltas", o.deltas, "Comma separated delta values");
    cond3->add_option("--alphas", o.alphas, "List or lo:hi:count");
    cond3->add_option("--K", o.K, "Truncation of the k-sum (default 20/min delta)");
    cond3->add_option("--eps", o.eps, "The epsilon of the condition")->check(CLI::PositiveNumber);

    auto* belief = app.add_subcommand("belief", "Full formula against the rightmost-pole formula");
    add_common(belief, o);
    belief->add_option("--ngrid", o.ngrid, "List a,b,c or start:stop:geometric:count");
    belief->add_option("--n", o.n, "Single n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        emit(run_selected(app, o), o.out, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitOk;
}

} // namespace meinardus::cli
