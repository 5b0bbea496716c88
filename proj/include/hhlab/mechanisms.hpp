#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhlab/bitstring.hpp"
#include "hhlab/operators.hpp"
#include "hhlab/rng.hpp"

namespace hhlab {

enum class MechanismKind {
    simple_random,
    permutation,
    greedy,
    random_gradient,
    generalised_random_gradient,
};

/// Ordered set of low-level heuristics available to the hyper-heuristic.
struct HeuristicSet {
    std::vector<OperatorSpec> operators;

    std::size_t k() const noexcept { return operators.size(); }

    /// The canonical set {1..k}-flip for one of the two flip families.
    static HeuristicSet canonical(OperatorFamily family, std::size_t k) {
        if (k == 0) throw std::invalid_argument("HeuristicSet: k must be at least 1");
        HeuristicSet set;
        set.operators.reserve(k);
        for (std::size_t m = 1; m <= k; ++m) set.operators.push_back({family, m, 0.0});
        return set;
    }

    /// A single standard-bit-mutation operator (the plain (1+1) EA baseline).
    static HeuristicSet single_sbm(double rate) {
        HeuristicSet set;
        set.operators.push_back({OperatorFamily::standard_bit_mutation, 0, rate});
        return set;
    }
};

/// Mechanism parameters fixed over a run.
struct MechanismConfig {
    MechanismKind kind = MechanismKind::simple_random;
    std::uint64_t tau = 1;        ///< GRG learning period (ignored elsewhere)
    std::vector<double> weights;  ///< SimpleRandom selection weights; empty = uniform
};

struct OperatorChoice {
    std::size_t index;
    bool fresh;  ///< true when this selection was a fresh random draw
};

/// Per-run selection state of one mechanism. Random Gradient is Generalised
/// Random Gradient with a learning period of one.
class MechanismState {
  public:
    MechanismState(const MechanismConfig& config, std::size_t k, Rng& rng)
        : kind_(config.kind), k_(k), tau_(config.tau), weights_(config.weights) {
        if (k == 0) throw std::invalid_argument("MechanismState: empty heuristic set");
        if (kind_ == MechanismKind::random_gradient) tau_ = 1;
        if (kind_ == MechanismKind::generalised_random_gradient && tau_ == 0)
            throw std::invalid_argument("MechanismState: learning period must be at least 1");
        if (!weights_.empty()) {
            if (weights_.size() != k)
                throw std::invalid_argument("MechanismState: weight count must match k");
            const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
            if (!(total > 0.0)) throw std::invalid_argument("MechanismState: weights must sum to a positive value");
            for (double& weight : weights_) weight /= total;
        }
        if (kind_ == MechanismKind::permutation) {
            ordering_.resize(k);
            std::iota(ordering_.begin(), ordering_.end(), std::size_t{0});
            for (std::size_t j = k; j > 1; --j) std::swap(ordering_[j - 1], ordering_[rng.below(j)]);
        }
    }

    MechanismKind kind() const noexcept { return kind_; }
    std::uint64_t tau() const noexcept { return tau_; }
    std::uint64_t failure_count() const noexcept { return failures_; }

    /// Picks the operator for the next mutation. Not defined for Greedy,
    /// which applies every operator each step.
    OperatorChoice select_operator(Rng& rng) {
        switch (kind_) {
            case MechanismKind::simple_random:
                if (k_ == 1) return {0, true};
                return {draw_weighted(rng), true};
            case MechanismKind::permutation: {
                const std::size_t idx = ordering_[cursor_];
                cursor_ = (cursor_ + 1) % k_;
                return {idx, true};
            }
            case MechanismKind::random_gradient:
            case MechanismKind::generalised_random_gradient:
                if (first_ || failures_ >= tau_) {
                    current_ = rng.below(k_);
                    failures_ = 0;
                    first_ = false;
                    return {current_, true};
                }
                return {current_, false};
            case MechanismKind::greedy:
                break;
        }
        throw std::logic_error("select_operator: Greedy applies all operators at once");
    }

    /// Feeds back whether the last mutation strictly improved the fitness.
    void note_outcome(bool improved) noexcept {
        if (kind_ == MechanismKind::random_gradient ||
            kind_ == MechanismKind::generalised_random_gradient) {
            if (improved)
                failures_ = 0;
            else
                ++failures_;
        }
    }

  private:
    std::size_t draw_weighted(Rng& rng) {
        if (weights_.empty()) return rng.below(k_);
        const double u = rng.uniform01();
        double cum = 0.0;
        for (std::size_t idx = 0; idx + 1 < k_; ++idx) {
            cum += weights_[idx];
            if (u < cum) return idx;
        }
        return k_ - 1;
    }

    MechanismKind kind_;
    std::size_t k_;
    std::uint64_t tau_;
    std::vector<double> weights_;
    std::vector<std::size_t> ordering_;  // permutation kind only
    std::size_t cursor_ = 0;
    std::size_t current_ = 0;
    std::uint64_t failures_ = 0;
    bool first_ = true;
};

/// Scratch buffers reused across steps of one run.
struct StepScratch {
    std::vector<std::size_t> flips;
    std::vector<std::size_t> best_flips;
    std::vector<std::size_t> effective;
    std::vector<BinomialSampler> binomials;  // aligned with the operator list

    void prepare(const HeuristicSet& set, std::size_t n) {
        binomials.clear();
        for (const OperatorSpec& op : set.operators) {
            if (op.family == OperatorFamily::standard_bit_mutation)
                binomials.emplace_back(n, op.rate);
            else
                binomials.emplace_back(n, 0.5);  // placeholder, never used
        }
    }
};

namespace detail {

/// Run of ones starting right after the first zero, with sorted pending
/// flips (beyond the first) toggled in.
inline Fitness scan_extension(const BitString& x, Fitness current,
                              const std::vector<std::size_t>& effective) {
    Fitness fit = current + 1;
    std::size_t next_flip = 1;
    while (fit < x.size()) {
        const bool flipped = next_flip < effective.size() && effective[next_flip] == fit;
        if (flipped) ++next_flip;
        if (x.test(fit) == flipped) break;  // bit reads as zero after mutation
        ++fit;
    }
    return fit;
}

}  // namespace detail

/// Fitness x would have after applying `flips`, given its current fitness.
/// Positions flipped an even number of times cancel. Does not modify x; the
/// surviving flips are left sorted in `effective`.
inline Fitness mutated_fitness(const BitString& x, Fitness current,
                               const std::vector<std::size_t>& flips,
                               std::vector<std::size_t>& effective) {
    // Small flip sets dominate every workload; handle them without sorting.
    if (flips.empty()) {
        effective.clear();
        return current;
    }
    if (flips.size() == 1) {
        const std::size_t p = flips[0];
        effective.assign(1, p);
        if (p != current) return p < current ? p : current;
        return detail::scan_extension(x, current, effective);
    }
    if (flips.size() == 2) {
        std::size_t a = flips[0];
        std::size_t b = flips[1];
        if (a == b) {
            effective.clear();
            return current;
        }
        if (a > b) std::swap(a, b);
        effective.assign({a, b});
        if (a != current) return a < current ? a : current;
        return detail::scan_extension(x, current, effective);
    }

    effective.assign(flips.begin(), flips.end());
    std::sort(effective.begin(), effective.end());
    std::size_t kept = 0;
    for (std::size_t r = 0; r < effective.size();) {
        std::size_t run = r + 1;
        while (run < effective.size() && effective[run] == effective[r]) ++run;
        if ((run - r) % 2 != 0) effective[kept++] = effective[r];
        r = run;
    }
    effective.resize(kept);

    if (effective.empty()) return current;
    if (effective.front() != current)
        return effective.front() < current ? effective.front() : current;
    return detail::scan_extension(x, current, effective);
}

struct StepOutcome {
    std::uint32_t evals;
    bool improved;
};

namespace detail {

inline void draw_operator(const OperatorSpec& op, std::size_t op_index, std::size_t n, Rng& rng,
                          StepScratch& scratch, std::vector<std::size_t>& out) {
    switch (op.family) {
        case OperatorFamily::mbitflip: draw_mbitflip(n, op.m, rng, out); return;
        case OperatorFamily::rls: draw_rls(n, op.m, rng, out); return;
        case OperatorFamily::standard_bit_mutation:
            draw_standard_bit_mutation(n, scratch.binomials[op_index], rng, out);
            return;
    }
}

}  // namespace detail

/// One iteration of the hyper-heuristic control loop on a concrete string:
/// selects (or, for Greedy, applies all) operators, accepts the child only on
/// strict improvement, and updates the mechanism bookkeeping.
inline StepOutcome hh_step(MechanismState& mechanism, const HeuristicSet& set, BitString& x,
                           Fitness& fitness, Rng& rng, StepScratch& scratch) {
    const std::size_t n = x.size();

    if (mechanism.kind() == MechanismKind::greedy) {
        // All operators applied to x in parallel; the best child replaces x
        // iff strictly fitter, ties broken uniformly at random.
        Fitness best = fitness;
        std::size_t best_count = 0;
        for (std::size_t idx = 0; idx < set.k(); ++idx) {
            detail::draw_operator(set.operators[idx], idx, n, rng, scratch, scratch.flips);
            const Fitness child = mutated_fitness(x, fitness, scratch.flips, scratch.effective);
            if (child > best) {
                best = child;
                best_count = 1;
                scratch.best_flips = scratch.effective;
            } else if (child == best && best > fitness) {
                ++best_count;
                if (rng.below(best_count) == 0) scratch.best_flips = scratch.effective;
            }
        }
        const bool improved = best > fitness;
        if (improved) {
            for (std::size_t pos : scratch.best_flips) x.flip(pos);
            fitness = best;
        }
        return {static_cast<std::uint32_t>(set.k()), improved};
    }

    const OperatorChoice choice = mechanism.select_operator(rng);
    detail::draw_operator(set.operators[choice.index], choice.index, n, rng, scratch, scratch.flips);
    const Fitness child = mutated_fitness(x, fitness, scratch.flips, scratch.effective);
    const bool improved = child > fitness;
    if (improved) {
        for (std::size_t pos : scratch.effective) x.flip(pos);
        fitness = child;
    }
    mechanism.note_outcome(improved);
    return {1u, improved};
}

std::string to_string(MechanismKind kind);

}  // namespace hhlab
