#ifndef MEINARDUS_EXACT_ORACLE_HPP
#define MEINARDUS_EXACT_ORACLE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "meinardus/real.hpp"
#include "meinardus/weights.hpp"

namespace meinardus {

/// Exact coefficients c_0..c_N of prod_k S_k for one structure kind.
struct CountTable {
    Kind kind = Kind::Partition;
    std::vector<Rational> b;      // b_1..b_N
    std::vector<Rational> counts; // c_0..c_N

    std::size_t max_n() const { return counts.empty() ? 0 : counts.size() - 1; }
};

/// Lambda_1..Lambda_N, the coefficients of z d/dz log f:
///   partitions  sum_{k|m} k b_k
///   selections  sum_{k|m} (-1)^(m/k+1) k b_k
///   assemblies  m b_m
std::vector<Rational> lambda_weights(Kind kind, std::span<const Rational> b, std::size_t n);

/// Production path: n c_n = sum_{m=1..n} Lambda_m c_{n-m}, evaluated in
/// integers after clearing denominators. O(N^2) big-integer operations.
CountTable exact_counts(Kind kind, std::span<const Rational> b, std::size_t n);

/// Refuses tables flagged inexact (irrational weights).
CountTable exact_counts(Kind kind, const WeightTable& weights, std::size_t n);

inline constexpr std::size_t kProductCountsLimit = 500;

/// Independent check: truncated product of the factors
/// S_k(z) = sum_j d_k(j) z^(kj). Limited to N <= 500.
CountTable product_counts(Kind kind, std::span<const Rational> b, std::size_t n);

/// CSV with header `n,count`; counts as integers or "p/q".
std::string to_csv(const CountTable& table);

} // namespace meinardus

#endif
