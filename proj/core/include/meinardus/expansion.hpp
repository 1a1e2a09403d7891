#ifndef MEINARDUS_EXPANSION_HPP
#define MEINARDUS_EXPANSION_HPP

#include <optional>
#include <string>
#include <vector>

#include "meinardus/real.hpp"
#include "meinardus/series.hpp"
#include "meinardus/weights.hpp"

namespace meinardus {

/// alphas: sums of at least two pole gaps rho_r - rho_k (rho_0 = 0) lying in
/// (0, rho_r + 1]. lambdas: alphas together with the single gaps.
struct UpsilonSets {
    std::vector<Rational> alphas;
    std::vector<Rational> lambdas;
};

UpsilonSets upsilon_sets(const std::vector<Rational>& poles);

/// h_0..h_r and hhat_0..hhat_r, indexed by pole with rho_0 = 0.
struct HConstants {
    std::vector<Real> h;
    std::vector<Real> hhat;
};

HConstants h_constants(Kind kind, const DirichletData& dd);

/// delta_n = lead n^(-1/(rho_r+1)) + sum_s K_s n^(-(1+lambda_s)/(rho_r+1)).
struct DeltaTerm {
    Rational lambda;
    Real K;
};

struct DeltaExpansion {
    Rational rho_r;
    Real lead;
    std::vector<DeltaTerm> terms;

    /// K at the given lambda, 0 when absent.
    Real coefficient(const Rational& lambda) const;
};

/// The series Q^(rho_r+1)(z) = hhat_r + P(z) + V(z) solving the saddle
/// condition in z = n^(-1/(rho_r+1)), truncated at rho_r + 1.
GenSeries q_expansion(Kind kind, const DirichletData& dd, const UpsilonSets& sets, const HConstants& hc);

/// Coefficients of Q^(rho_r+1) - sum_k hhat_k Q^(rho_r-rho_k) z^(rho_r-rho_k)
/// for a candidate Q^(rho_r+1) series, with Q^g expanded independently from
/// Q = Q(0) (Q^(rho_r+1)/hhat_r)^(1/(rho_r+1)). Zero for the exact solution.
GenSeries saddle_condition_residual(const GenSeries& q_power, const DirichletData& dd, const HConstants& hc);

DeltaExpansion delta_expansion(Kind kind, const DirichletData& dd);

/// Same expansion for poles l*a, l = 1..r, by coefficient matching of a
/// power series in z^a. Throws PreconditionError for other pole sets.
DeltaExpansion equidistant_psi(Kind kind, const DirichletData& dd);

Real evaluate_delta(const DeltaExpansion& e, const Real& n);

struct ExpTerm {
    Rational power;
    Real coeff;
};

/// c_n ~ H n^n_exponent exp(sum coeff n^power).
struct AsymptoticFormula {
    Kind kind = Kind::Partition;
    Real H;
    Real n_exponent;
    std::optional<Rational> n_exponent_exact;
    std::vector<ExpTerm> exp_terms; // powers strictly decreasing
    Real K2;
};

AsymptoticFormula asymptotic_formula(Kind kind, const DirichletData& dd);

/// Formula built from the rightmost pole alone, with D(0) and D'(0) taken
/// from the one-term family A_r k^(rho_r - 1).
AsymptoticFormula single_pole_formula(Kind kind, const DirichletData& dd);

Real evaluate_formula(const AsymptoticFormula& f, const Real& n);
Real log_evaluate_formula(const AsymptoticFormula& f, const Real& n);

/// {"kind", "H", "n_exponent", "exp_terms", "K2", "note"}.
std::string formula_to_json(const AsymptoticFormula& f, unsigned digits = 0);

} // namespace meinardus

#endif
