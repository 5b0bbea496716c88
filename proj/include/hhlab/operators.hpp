#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhlab/bitstring.hpp"
#include "hhlab/rng.hpp"

namespace hhlab {

enum class OperatorFamily {
    mbitflip,               ///< flips m positions drawn with replacement (duplicates cancel)
    rls,                    ///< flips exactly m distinct positions
    standard_bit_mutation,  ///< flips each position independently with a fixed rate
};

/// One low-level mutation operator. The flip families use `m`; standard bit
/// mutation uses `rate`.
struct OperatorSpec {
    OperatorFamily family = OperatorFamily::mbitflip;
    std::size_t m = 1;
    double rate = 0.0;
};

/// Draws m positions independently and uniformly; duplicates allowed.
inline void draw_mbitflip(std::size_t n, std::size_t m, Rng& rng, std::vector<std::size_t>& out) {
    if (m == 0) throw std::invalid_argument("mbitflip: m must be at least 1");
    out.clear();
    for (std::size_t d = 0; d < m; ++d) out.push_back(rng.below(n));
}

/// Draws m distinct positions uniformly among all m-subsets (Floyd's method).
inline void draw_rls(std::size_t n, std::size_t m, Rng& rng, std::vector<std::size_t>& out) {
    if (m == 0) throw std::invalid_argument("rls_flip: m must be at least 1");
    if (m > n) throw std::invalid_argument("rls_flip: m exceeds the string length");
    out.clear();
    for (std::size_t j = n - m; j < n; ++j) {
        const std::size_t t = rng.below(j + 1);
        if (std::find(out.begin(), out.end(), t) != out.end())
            out.push_back(j);
        else
            out.push_back(t);
    }
}

/// Samples Binomial(n, p) by walking the probability mass function from zero.
/// Intended for small n*p (one or two steps on average).
class BinomialSampler {
  public:
    BinomialSampler(std::size_t n, double p) : n_(n), p_(p) {
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("standard_bit_mutation: rate must lie in (0, 1)");
        double pmf = std::exp(static_cast<double>(n) * std::log1p(-p));
        if (pmf < 1e-300) return;  // P(0) underflows; sampling falls back to per-bit draws
        const double ratio = p / (1.0 - p);
        double cum = pmf;
        cdf_.push_back(cum);
        for (std::size_t b = 0; b < n && cum < 1.0 && pmf > 1e-320; ++b) {
            pmf *= static_cast<double>(n - b) / static_cast<double>(b + 1) * ratio;
            cum += pmf;
            cdf_.push_back(cum);
        }
    }

    std::size_t operator()(Rng& rng) const {
        if (cdf_.empty()) {
            std::size_t b = 0;
            for (std::size_t j = 0; j < n_; ++j) b += rng.uniform01() < p_ ? 1 : 0;
            return b;
        }
        const double u = rng.uniform01();
        std::size_t b = 0;
        while (b + 1 < cdf_.size() && u >= cdf_[b]) ++b;
        return b;
    }

  private:
    std::size_t n_;
    double p_;
    std::vector<double> cdf_;
};

/// Draws the flip set of a standard bit mutation: first the number of flips,
/// then that many distinct positions.
inline void draw_standard_bit_mutation(std::size_t n, const BinomialSampler& binom, Rng& rng,
                                       std::vector<std::size_t>& out) {
    const std::size_t b = binom(rng);
    if (b == 0) {
        out.clear();
        return;
    }
    draw_rls(n, b, rng, out);
}

inline void apply_flips(BitString& x, const std::vector<std::size_t>& positions) {
    for (std::size_t pos : positions) x.flip(pos);
}

inline BitString mbitflip(const BitString& x, std::size_t m, Rng& rng) {
    std::vector<std::size_t> buf;
    draw_mbitflip(x.size(), m, rng, buf);
    BitString child = x;
    apply_flips(child, buf);
    return child;
}

inline BitString rls_flip(const BitString& x, std::size_t m, Rng& rng) {
    std::vector<std::size_t> buf;
    draw_rls(x.size(), m, rng, buf);
    BitString child = x;
    apply_flips(child, buf);
    return child;
}

inline BitString standard_bit_mutation(const BitString& x, double rate, Rng& rng) {
    BinomialSampler binom(x.size(), rate);
    std::vector<std::size_t> buf;
    draw_standard_bit_mutation(x.size(), binom, rng, buf);
    BitString child = x;
    apply_flips(child, buf);
    return child;
}

inline std::string to_string(OperatorFamily family) {
    switch (family) {
        case OperatorFamily::mbitflip: return "mbitflip";
        case OperatorFamily::rls: return "rls";
        case OperatorFamily::standard_bit_mutation: return "sbm";
    }
    return "?";
}

}  // namespace hhlab
