#ifndef MEINARDUS_SADDLE_HPP
#define MEINARDUS_SADDLE_HPP

#include <cstddef>
#include <optional>
#include <span>

#include "meinardus/exact_oracle.hpp"
#include "meinardus/real.hpp"
#include "meinardus/weights.hpp"

namespace meinardus {

/// Root of E U_n = n together with the entropy derivatives at that root.
struct SaddlePoint {
    std::size_t n = 0;
    Kind kind = Kind::Partition;
    Real delta;
    Real residual; // |E U_n - n|
    Real log_fn;   // log f_n(e^-delta)
    Real B2;       // (log f_n(e^-delta))''
    Real T;        // -(log f_n(e^-delta))'''
    int iterations = 0;
};

/// Values of log f_n(e^-delta) and its first three delta-derivatives.
struct EntropyTerms {
    Real log_fn;
    Real mean; // -(log f_n)' = E U_n
    Real B2;   // (log f_n)''
    Real T;    // -(log f_n)'''
};

/// E U_n - n at the given delta > 0. Uses b_1..b_n from `b`.
Real mean_constraint(Kind kind, std::span<const Real> b, std::size_t n, const Real& delta);

/// All entropy terms in one O(n) pass.
EntropyTerms entropy_terms(Kind kind, std::span<const Real> b, std::size_t n, const Real& delta);

/// Leading-order scale of the root, (hhat_r / n)^(1/(rho_r+1)).
struct SaddleScale {
    Real hhat_r;
    Rational rho_r;
};

struct SolveOptions {
    /// Stop once |E U_n - n| <= tol * n.
    Real tol = Real("1e-30");
    /// Bracket centre; when absent a unit guess is widened geometrically.
    std::optional<SaddleScale> scale;
    /// Optional starting point for the Newton iteration (must be > 0).
    std::optional<Real> initial_guess;
    int max_iterations = 400;
};

/// Safeguarded Newton iteration on the strictly decreasing mean constraint,
/// falling back to bisection in the bracket [lead/64, 64 lead].
/// Throws NoSolutionError when the feasibility bound fails.
SaddlePoint solve_delta(Kind kind, std::span<const Real> b, std::size_t n, const SolveOptions& options = {});

/// P(U_n = n) = c_n e^(-n delta) / f_n(e^-delta), from exact counts.
/// n = 0 gives 1.
Real llt_probability_exact(const CountTable& counts, const SaddlePoint& sp);

} // namespace meinardus

#endif
