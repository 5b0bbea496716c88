#pragma once

#include <cstddef>

#include "hhlab/operators.hpp"

namespace hhlab {

/// Raises y to a small non-negative integer power by repeated multiplication.
inline double powi(double y, std::size_t e) noexcept {
    double r = 1.0;
    for (std::size_t j = 0; j < e; ++j) r *= y;
    return r;
}

/// Per-state improvement probability of the m-bit flip (with replacement)
/// operator on LeadingOnes, dominant term:
///     m * (1/n) * ((n-i-1)/n)^(m-1).
/// Exact for m in {1, 2}; for m >= 3 it omits non-negative prefix
/// flip-and-reflip contributions of order 1/n^2.
double p_improve_leading(std::size_t m, std::size_t i, std::size_t n) noexcept;

/// Exact improvement probability of the m-bit flip operator, by enumerating
/// all n^m ordered draw tuples. An improvement requires the first zero to be
/// flipped an odd number of times and every prefix position an even number of
/// times. Enumeration oracle only; throws when n^m exceeds the budget (1e8).
double p_improve_exact_mbitflip(std::size_t m, std::size_t i, std::size_t n);

/// Exact improvement probability of the m-flip-without-replacement operator:
///     C(n-i-1, m-1) / C(n, m),
/// and 0 whenever i > n - m. Evaluated as an incremental ratio product so it
/// stays finite for n up to 1e8.
double p_improve_rls(std::size_t m, std::size_t i, std::size_t n) noexcept;

/// Improvement probability model used by the fast engine, by family.
double p_improve(const OperatorSpec& op, std::size_t i, std::size_t n);

/// State threshold below which the b-flip operator has the higher success
/// probability than the a-flip operator (b > a >= 1):
///     n * (1 - (b/a)^(1/(a-b))) - 1.
double crossover_point(std::size_t a, std::size_t b, std::size_t n);

/// Neighbourhood size with the best success probability at LeadingOnes value
/// i when operators 1..k are available. Region boundaries use floors: k for
/// i <= floor(n/k)-1, otherwise the unique m with
/// floor(n/(m+1)) <= i <= floor(n/m)-1.
std::size_t optimal_operator(std::size_t i, std::size_t k, std::size_t n);

}  // namespace hhlab
