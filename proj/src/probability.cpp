#include "hhlab/probability.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hhlab {

double p_improve_leading(std::size_t m, std::size_t i, std::size_t n) noexcept {
    const double y = static_cast<double>(n - i - 1) / static_cast<double>(n);
    return static_cast<double>(m) / static_cast<double>(n) * powi(y, m - 1);
}

double p_improve_exact_mbitflip(std::size_t m, std::size_t i, std::size_t n) {
    if (m == 0 || n == 0 || i >= n) throw std::invalid_argument("p_improve_exact_mbitflip: bad arguments");
    double tuples = 1.0;
    for (std::size_t d = 0; d < m; ++d) tuples *= static_cast<double>(n);
    if (tuples > 1e8) throw std::invalid_argument("p_improve_exact_mbitflip: enumeration budget exceeded");

    // A draw at position < i toggles a prefix parity; a draw at i toggles the
    // first-zero parity; draws past i never affect the LeadingOnes value.
    std::vector<std::uint8_t> parity(i + 1, 0);
    std::vector<std::size_t> pos(m, 0);
    std::uint64_t hits = 0;
    const auto total = static_cast<std::uint64_t>(tuples);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::int64_t odd_count = 0;
        for (std::size_t d = 0; d < m; ++d) {
            const std::size_t p = pos[d];
            if (p <= i) {
                parity[p] ^= 1;
                odd_count += parity[p] ? 1 : -1;
            }
        }
        // improvement: the first zero is the only position <= i with odd parity
        if (parity[i] != 0 && odd_count == 1) ++hits;
        for (std::size_t d = 0; d < m; ++d) {
            const std::size_t p = pos[d];
            if (p <= i) parity[p] = 0;
        }
        // odometer increment
        for (std::size_t d = 0; d < m; ++d) {
            if (++pos[d] < n) break;
            pos[d] = 0;
        }
    }
    return static_cast<double>(hits) / tuples;
}

double p_improve_rls(std::size_t m, std::size_t i, std::size_t n) noexcept {
    if (i + m > n) return 0.0;  // i > n - m: no valid flip set improves
    double p = static_cast<double>(m) / static_cast<double>(n);
    for (std::size_t j = 1; j < m; ++j)
        p *= static_cast<double>(n - i - j) / static_cast<double>(n - j);
    return p;
}

double p_improve(const OperatorSpec& op, std::size_t i, std::size_t n) {
    switch (op.family) {
        case OperatorFamily::mbitflip: return p_improve_leading(op.m, i, n);
        case OperatorFamily::rls: return p_improve_rls(op.m, i, n);
        case OperatorFamily::standard_bit_mutation:
            throw std::invalid_argument("p_improve: no probability model for standard bit mutation");
    }
    throw std::invalid_argument("p_improve: unknown operator family");
}

double crossover_point(std::size_t a, std::size_t b, std::size_t n) {
    if (!(b > a && a >= 1)) throw std::invalid_argument("crossover_point: requires b > a >= 1");
    const double exponent = 1.0 / (static_cast<double>(a) - static_cast<double>(b));
    return static_cast<double>(n) * (1.0 - std::pow(static_cast<double>(b) / static_cast<double>(a), exponent)) - 1.0;
}

std::size_t optimal_operator(std::size_t i, std::size_t k, std::size_t n) {
    if (k == 0 || i >= n) throw std::invalid_argument("optimal_operator: bad arguments");
    if (i + 1 <= n / k) return k;
    for (std::size_t m = 1; m < k; ++m) {
        if (i >= n / (m + 1) && i + 1 <= n / m) return m;
    }
    return 1;  // unreachable for k >= 1; keeps the compiler happy
}

}  // namespace hhlab
