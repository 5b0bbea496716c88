#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hhlab/rng.hpp"

namespace hhlab {

/// LeadingOnes fitness value; always in [0, n].
using Fitness = std::size_t;

/// Fixed-length binary string packed into 64-bit words. The length is set at
/// construction and never changes over a run.
class BitString {
  public:
    explicit BitString(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {
        if (n == 0) throw std::invalid_argument("BitString: length must be positive");
    }

    /// Uniform random string.
    static BitString random(std::size_t n, Rng& rng) {
        BitString x(n);
        for (auto& w : x.words_) w = rng();
        x.mask_tail();
        return x;
    }

    std::size_t size() const noexcept { return n_; }

    bool test(std::size_t pos) const noexcept {
        return (words_[pos >> 6] >> (pos & 63)) & 1u;
    }

    void flip(std::size_t pos) noexcept { words_[pos >> 6] ^= std::uint64_t{1} << (pos & 63); }

    void set(std::size_t pos, bool value) noexcept {
        if (value)
            words_[pos >> 6] |= std::uint64_t{1} << (pos & 63);
        else
            words_[pos >> 6] &= ~(std::uint64_t{1} << (pos & 63));
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend bool operator==(const BitString& a, const BitString& b) noexcept {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

    /// Length of the all-ones run starting at `pos`. Bits past the string end
    /// are stored as zeros, so the run can never overrun the string.
    std::size_t ones_run_from(std::size_t pos) const noexcept {
        std::size_t run = 0;
        std::size_t cur = pos;
        while (cur < n_) {
            const std::uint64_t bits = words_[cur >> 6] >> (cur & 63);
            const unsigned avail = 64 - static_cast<unsigned>(cur & 63);
            const auto ones = static_cast<unsigned>(std::countr_one(bits));
            if (ones >= avail) {
                run += avail;
                cur += avail;
                continue;
            }
            run += ones;
            break;
        }
        return run;
    }

  private:
    void mask_tail() noexcept {
        const unsigned used = n_ & 63;
        if (used != 0) words_.back() &= (~std::uint64_t{0}) >> (64 - used);
    }

    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

/// Number of consecutive one-bits at the start of the string.
inline Fitness leading_ones(const BitString& x) noexcept { return x.ones_run_from(0); }

}  // namespace hhlab
