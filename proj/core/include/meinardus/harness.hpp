#ifndef MEINARDUS_HARNESS_HPP
#define MEINARDUS_HARNESS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meinardus/real.hpp"
#include "meinardus/weights.hpp"

namespace meinardus {

/// "10,20,50" or "start:stop:geometric:count". Result is ascending and
/// free of duplicates; throws ParseError on malformed input.
std::vector<std::size_t> parse_ngrid(std::string_view spec);

enum class OutputFormat { Csv, Json };

struct RunConfig {
    WeightFamily family = PowerSum{{{Rational(1), Rational(1)}}};
    Kind kind = Kind::Partition;
    std::vector<std::size_t> ngrid;
    unsigned digits = kDefaultDigits;
    Real tol = Real("1e-30"); // relative residual of the saddle equation
    OutputFormat format = OutputFormat::Csv;
    std::string out; // empty: standard output
};

/// Exact columns are absent when the family has irrational weights; the n = 0
/// row carries only c_exact = 1.
struct CompareRow {
    std::size_t n = 0;
    std::optional<Rational> c_exact;
    std::optional<Real> c_asym;
    std::optional<Real> ratio;     // c_exact / c_asym
    std::optional<Real> log_ratio; // log c_exact - log c_asym
    std::optional<Real> delta_num;
    std::optional<Real> delta_exp;
    std::optional<Real> llt_ratio; // P(U_n = n) sqrt(2 pi B_n^2)
};

std::vector<CompareRow> compare_table(const RunConfig& cfg);

struct DeltaRow {
    std::size_t n = 0;
    Real delta_num;
    Real delta_exp;
    Real scaled_gap; // n |delta_num - delta_exp|
    int iterations = 0;
};

/// Numeric root against the expansion for every n >= 1 of the grid.
std::vector<DeltaRow> delta_table(const RunConfig& cfg);

/// Full formula against the one built from the rightmost pole alone.
struct BeliefRow {
    std::size_t n = 0;
    std::optional<Real> log_exact;
    Real log_full;
    Real log_single;
    std::optional<Real> gap_exact; // log c_exact - log c_single
    Real gap_predicted;            // log c_full - log c_single
};

std::vector<BeliefRow> belief_table(const RunConfig& cfg);

/// Numeric look at the non-lattice condition
///   2 sum_{k<=K} b_k e^(-k delta) sin^2(pi k alpha) >= (1 + rho_r/2 + eps) M |ln delta|
/// over sqrt(delta) <= |alpha| <= 1/2. Pairs outside that range are skipped.
struct Cond3Point {
    double delta = 0;
    double alpha = 0;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;
};

struct Cond3Report {
    std::vector<Cond3Point> points;
    double min_margin = 0;
    bool pass = false;
    std::size_t skipped = 0;
};

Cond3Report condition3_check(const WeightFamily& family, Kind kind, const std::vector<double>& deltas,
                             const std::vector<double>& alphas, std::size_t K, double eps);

std::string to_csv(const std::vector<CompareRow>& rows, unsigned digits = 0);
std::string to_json(const std::vector<CompareRow>& rows, unsigned digits = 0);
std::string to_csv(const std::vector<DeltaRow>& rows, unsigned digits = 0);
std::string to_json(const std::vector<DeltaRow>& rows, unsigned digits = 0);
std::string to_csv(const std::vector<BeliefRow>& rows, unsigned digits = 0);
std::string to_json(const std::vector<BeliefRow>& rows, unsigned digits = 0);
std::string to_csv(const Cond3Report& report);
std::string to_json(const Cond3Report& report);

} // namespace meinardus

#endif
