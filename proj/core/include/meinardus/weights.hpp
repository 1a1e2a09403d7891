#ifndef MEINARDUS_WEIGHTS_HPP
#define MEINARDUS_WEIGHTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "meinardus/real.hpp"

namespace meinardus {

/// The three decomposable structures: weighted partitions (Bose-Einstein),
/// selections (Fermi-Dirac) and assemblies (Maxwell-Boltzmann).
enum class Kind { Partition = 1, Selection = 2, Assembly = 3 };

/// 1 for partitions, 0 otherwise; multiplies every D(0) log-term.
int indicator(Kind kind);

/// Constant M of the non-lattice condition: 4/ln 5, 4, 1.
Real m_constant(Kind kind);

Kind kind_from_int(int value);

/// One summand a * k^(r-1) of a power-sum weight sequence.
struct PowerTerm {
    Rational coeff;    // a > 0
    Rational exponent; // r > 0
};

/// b_k = sum_j a_j k^(r_j - 1).
struct PowerSum {
    std::vector<PowerTerm> terms;
};

/// b_k = C(k + l, l).
struct Binomial {
    int l = 1;
};

/// Poles and residues of D(s) = sum_k b_k k^-s, plus D(0), D'(0).
struct DirichletData {
    std::vector<Rational> poles; // strictly increasing, positive
    std::vector<Real> residues;  // positive, one per pole
    Real d0;
    Real d0_prime;
    Real c0 = Real(0.5); // half-plane of continuation; metadata only
    /// Exact D(0) when it is rational (integer power exponents, or a decimal
    /// string supplied by the user).
    std::optional<Rational> d0_exact;

    const Rational& rightmost_pole() const { return poles.back(); }
    std::size_t pole_count() const { return poles.size(); }
};

/// User supplied table b_1, b_2, ... together with its Dirichlet data.
struct Tabulated {
    std::vector<Rational> b;
    DirichletData dirichlet;
};

using WeightFamily = std::variant<PowerSum, Binomial, Tabulated>;

/// Throws InvariantError when the family breaks its invariants.
void validate(const WeightFamily& family);
void validate(const DirichletData& data);

/// Binomial{l} is rewritten as a PowerSum by expanding prod_{j=1..l}(k+j)/l!
/// in powers of k (descending exponents). Other families pass through.
WeightFamily normalize_family(const WeightFamily& family);

/// b_1..b_nmax. `exact` holds rationals when every b_k is rational; `values`
/// always holds the working-precision reals.
struct WeightTable {
    bool exact = true;
    std::vector<Rational> exact_values;
    std::vector<Real> values;

    std::size_t size() const { return values.size(); }
};

WeightTable eval_weights(const WeightFamily& family, std::size_t nmax);

/// Real values only; cheaper for the large-n saddle computations.
std::vector<Real> eval_weights_real(const WeightFamily& family, std::size_t nmax);

/// Whether every b_k of the family is rational (integer power exponents or a
/// tabulated family).
bool has_rational_weights(const WeightFamily& family);

DirichletData dirichlet_data(const WeightFamily& family);

/// For a PowerSum the largest power of k in b_k is rho_r - 1, so
/// b_k = o(k^rho_r) holds by construction. Checked on the exponents.
bool growth_bound_holds(const PowerSum& family);

/// Family document, e.g. {"type":"binomial","l":2}.
WeightFamily parse_family(std::string_view json_text);
std::string family_to_json(const WeightFamily& family);

} // namespace meinardus

#endif
