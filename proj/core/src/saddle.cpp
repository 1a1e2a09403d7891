#include "meinardus/saddle.hpp"

#include "meinardus/errors.hpp"

namespace meinardus {

namespace {

void check_inputs(std::span<const Real> b, std::size_t n, const Real& delta)
{
    if (!(delta > 0))
        throw DomainError("saddle: delta must be positive");
    if (b.size() < n)
        throw LengthError("saddle: weight table shorter than n");
}

// Re-anchor e^{-k delta} with a fresh exp() this often, so the running
// product never accumulates more than a few hundred ulps.
constexpr std::size_t kReanchor = 512;

// Below this k*delta the kind-1/2 denominators are formed from expm1.
const Real& small_argument()
{
    static const Real one(1);
    return one;
}

template <bool Full>
EntropyTerms accumulate(Kind kind, std::span<const Real> b, std::size_t n, const Real& delta)
{
    EntropyTerms out{Real(0), Real(0), Real(0), Real(0)};
    const Real step = exp(-delta);
    Real q = 1;  // e^{-k delta}
    Real t;      // k delta
    Real om;     // 1 -/+ q
    Real inv;    // 1 / om
    Real r;      // q / om
    Real term;
    Real tmp;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k % kReanchor == 0) {
            t = delta;
            t *= static_cast<unsigned long>(k);
            q = exp(-t);
        } else {
            q *= step;
        }
        const Real& w = b[k - 1];
        if (w == 0)
            continue;
        const unsigned long kk = static_cast<unsigned long>(k);
        switch (kind) {
        case Kind::Partition: {
            t = delta;
            t *= kk;
            if (t < small_argument()) {
                om = -expm1(-t);
            } else {
                om = 1;
                om -= q;
            }
            inv = 1;
            inv /= om;
            r = q;
            r *= inv;
            term = r;
            term *= w;
            term *= kk;
            out.mean += term; // w k q/(1-q)
            term *= inv;
            term *= kk;
            out.B2 += term; // w k^2 q/(1-q)^2
            if constexpr (Full) {
                tmp = 1;
                tmp += q;
                term *= tmp;
                term *= inv;
                term *= kk;
                out.T += term; // w k^3 q(1+q)/(1-q)^3
                tmp = log(om);
                tmp *= w;
                out.log_fn -= tmp;
            }
            break;
        }
        case Kind::Selection: {
            om = 1;
            om += q;
            inv = 1;
            inv /= om;
            r = q;
            r *= inv;
            term = r;
            term *= w;
            term *= kk;
            out.mean += term; // w k q/(1+q)
            term *= inv;
            term *= kk;
            out.B2 += term; // w k^2 q/(1+q)^2
            if constexpr (Full) {
                tmp = 1;
                tmp -= q;
                term *= tmp;
                term *= inv;
                term *= kk;
                out.T += term; // w k^3 q(1-q)/(1+q)^3
                tmp = log1p(q);
                tmp *= w;
                out.log_fn += tmp;
            }
            break;
        }
        case Kind::Assembly: {
            term = q;
            term *= w;
            if constexpr (Full)
                out.log_fn += term;
            term *= kk;
            out.mean += term;
            term *= kk;
            out.B2 += term;
            if constexpr (Full) {
                term *= kk;
                out.T += term;
            }
            break;
        }
        }
    }
    return out;
}

void check_feasible(Kind kind, std::span<const Real> b, std::size_t n)
{
    if (n == 0)
        throw PreconditionError("saddle: n must be at least 1");
    if (b.size() < n)
        throw LengthError("saddle: weight table shorter than n");
    Real first_moment = 0;
    bool any_positive = false;
    for (std::size_t k = 1; k <= n; ++k) {
        if (b[k - 1] < 0)
            throw InvariantError("saddle: weights must be nonnegative");
        if (b[k - 1] > 0)
            any_positive = true;
        first_moment += b[k - 1] * static_cast<unsigned long>(k);
    }
    const Real target(static_cast<unsigned long>(n));
    switch (kind) {
    case Kind::Partition:
        if (!any_positive)
            throw NoSolutionError("partition saddle: no positive weight b_k with k <= n");
        break;
    case Kind::Selection:
        if (!(target < first_moment / 2))
            throw NoSolutionError("selection saddle infeasible: need n < (1/2) sum_{k<=n} k b_k = " +
                                  format_real(first_moment / 2, 20));
        break;
    case Kind::Assembly:
        if (!(target < first_moment))
            throw NoSolutionError("assembly saddle infeasible: need n < sum_{k<=n} k b_k = " +
                                  format_real(first_moment, 20));
        break;
    }
}

} // namespace

Real mean_constraint(Kind kind, std::span<const Real> b, std::size_t n, const Real& delta)
{
    check_inputs(b, n, delta);
    return accumulate<false>(kind, b, n, delta).mean - Real(static_cast<unsigned long>(n));
}

EntropyTerms entropy_terms(Kind kind, std::span<const Real> b, std::size_t n, const Real& delta)
{
    check_inputs(b, n, delta);
    return accumulate<true>(kind, b, n, delta);
}

SaddlePoint solve_delta(Kind kind, std::span<const Real> b, std::size_t n, const SolveOptions& options)
{
    check_feasible(kind, b, n);
    const Real target(static_cast<unsigned long>(n));
    const Real tolerance = options.tol * target;

    Real lead = 1;
    if (options.scale) {
        const Rational& rho = options.scale->rho_r;
        lead = pow(options.scale->hhat_r / target, 1 / to_real(rho + 1));
    }
    Real delta = options.initial_guess ? *options.initial_guess : lead;
    if (!(delta > 0))
        throw DomainError("saddle: initial guess must be positive");

    // Bracket [lo, hi] with f(lo) > 0 > f(hi); hi == 0 means "not yet found".
    Real lo = 0;
    Real hi = 0;
    const Real widen = 64;
    for (int it = 1; it <= options.max_iterations; ++it) {
        EntropyTerms e = accumulate<false>(kind, b, n, delta);
        Real f = e.mean - target;
        if (abs(f) <= tolerance) {
            EntropyTerms full = accumulate<true>(kind, b, n, delta);
            SaddlePoint sp;
            sp.n = n;
            sp.kind = kind;
            sp.delta = delta;
            sp.residual = abs(full.mean - target);
            sp.log_fn = full.log_fn;
            sp.B2 = full.B2;
            sp.T = full.T;
            sp.iterations = it;
            return sp;
        }
        if (f > 0)
            lo = delta;
        else
            hi = delta;

        Real next = delta + f / e.B2;
        const bool above_lo = next > lo;
        const bool below_hi = hi == 0 || next < hi;
        if (above_lo && below_hi && next > 0) {
            delta = next;
        } else if (hi == 0) {
            delta = lo * widen;
        } else if (lo == 0) {
            delta = hi / widen;
        } else {
            delta = sqrt(lo * hi);
        }
        if (hi != 0 && lo != 0 && (hi - lo) <= working_epsilon() * hi) {
            // Bracket collapsed to working precision.
            EntropyTerms full = accumulate<true>(kind, b, n, delta);
            SaddlePoint sp{n, kind, delta, abs(full.mean - target), full.log_fn, full.B2, full.T, it};
            return sp;
        }
    }
    throw NoSolutionError("saddle: iteration did not converge for n = " + std::to_string(n));
}

Real llt_probability_exact(const CountTable& counts, const SaddlePoint& sp)
{
    if (sp.n == 0)
        return Real(1);
    if (counts.max_n() < sp.n)
        throw LengthError("llt: count table does not cover n");
    if (counts.kind != sp.kind)
        throw PreconditionError("llt: count table and saddle point differ in kind");
    const Rational& cn = counts.counts[sp.n];
    if (cn <= 0)
        return Real(0);
    Real log_p = log_rational(cn) - sp.delta * static_cast<unsigned long>(sp.n) - sp.log_fn;
    return exp(log_p);
}

} // namespace meinardus
