#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hhlab/mechanisms.hpp"
#include "hhlab/rng.hpp"

namespace hhlab {

enum class EngineKind {
    exact,  ///< simulates every mutation on a concrete bit string
    fast,   ///< samples geometric waiting times between improvements
};

/// Parameters of one simulation run. `seed` is the master seed; replicate
/// streams are derived from it, so results are independent of scheduling.
struct RunConfig {
    std::size_t n = 0;
    HeuristicSet set;
    MechanismConfig mechanism;
    EngineKind engine = EngineKind::exact;
    std::uint64_t seed = 1;
    std::vector<std::size_t> targets;  ///< strictly increasing, in (0, n]; n is implicit
};

/// Outcome of one run: evaluations until the optimum, and the first-hitting
/// evaluation count for every target (the implicit final target n included).
struct RunResult {
    std::uint64_t total_evals = 0;
    std::vector<std::uint64_t> hitting;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct TargetStats {
    std::size_t target = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double normalised_mean = 0.0;  ///< mean / n^2
};

struct AggregateStats {
    std::size_t replicates = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double normalised_mean = 0.0;
    std::vector<TargetStats> per_target;
};

/// Geometric waiting time with success probability p from one uniform draw
/// u in [0, 1): ceil(log(1-u) / log(1-p)), and 1 when p = 1. Throws when
/// p <= 0 (an infinite waiting time signals a configuration error).
std::uint64_t sample_waiting_time(double p, double u);

/// Number of consecutive one-bits before the first zero in a uniform random
/// suffix of the given length: P(G = g) = 2^-(g+1) for g < remaining and
/// P(G = remaining) = 2^-remaining.
inline std::size_t sample_freeriders(std::size_t remaining, Rng& rng) {
    std::size_t g = 0;
    for (;;) {
        const auto ones = static_cast<unsigned>(std::countr_one(rng()));
        g += ones;
        if (g >= remaining) return remaining;
        if (ones < 64) return g;
    }
}

/// Throws std::invalid_argument when the configuration violates a contract
/// (bad targets, fast engine with an unsupported mechanism or operator set).
void validate_config(const RunConfig& config);

/// The run's target list with the implicit final target n appended.
std::vector<std::size_t> effective_targets(const RunConfig& config);

/// Simulates every mutation on a concrete bit string. Practical up to
/// n of roughly 1e5; beyond that use the fast engine.
RunResult run_exact(const RunConfig& config, Rng& rng);

/// Samples geometric waiting times between improvements; the only state kept
/// is the current fitness. Supports simple-random, random-gradient and grg
/// over the flip families (a 1-bit operator must be present).
RunResult run_fast(const RunConfig& config, Rng& rng);

/// Runs one replicate on its derived random stream.
RunResult run_one(const RunConfig& config, std::uint64_t replicate);

/// Runs replicates 0..count-1, optionally on a worker pool. Results are
/// identical for every value of `jobs` (0 = hardware concurrency).
std::vector<RunResult> run_replicates(const RunConfig& config, std::size_t count, unsigned jobs = 1);

/// Means, sample standard deviations, and n^2-normalised means, over the
/// whole run and per target. Deterministic reduction in replicate order.
AggregateStats aggregate(std::span<const RunResult> results, std::size_t n,
                         std::span<const std::size_t> targets);

std::string to_string(EngineKind engine);

}  // namespace hhlab
