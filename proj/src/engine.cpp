#include "hhlab/engine.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "hhlab/probability.hpp"

namespace hhlab {

std::uint64_t sample_waiting_time(double p, double u) {
    if (!(p > 0.0)) throw std::invalid_argument("sample_waiting_time: success probability must be positive");
    if (p >= 1.0) return 1;
    const double t = std::ceil(std::log1p(-u) / std::log1p(-p));
    return t < 1.0 ? std::uint64_t{1} : static_cast<std::uint64_t>(t);
}

void validate_config(const RunConfig& config) {
    if (config.n == 0) throw std::invalid_argument("RunConfig: n must be positive");
    if (config.set.k() == 0) throw std::invalid_argument("RunConfig: empty heuristic set");
    for (std::size_t t = 0; t < config.targets.size(); ++t) {
        if (config.targets[t] == 0 || config.targets[t] > config.n)
            throw std::invalid_argument("RunConfig: targets must lie in (0, n]");
        if (t > 0 && config.targets[t] <= config.targets[t - 1])
            throw std::invalid_argument("RunConfig: targets must be strictly increasing");
    }
    if (config.mechanism.kind == MechanismKind::generalised_random_gradient &&
        config.mechanism.tau == 0)
        throw std::invalid_argument("RunConfig: learning period must be at least 1");
    if (config.engine == EngineKind::fast) {
        const MechanismKind kind = config.mechanism.kind;
        if (kind != MechanismKind::simple_random && kind != MechanismKind::random_gradient &&
            kind != MechanismKind::generalised_random_gradient)
            throw std::invalid_argument("RunConfig: fast engine supports only simple-random, "
                                        "random-gradient and grg mechanisms");
        bool has_unit = false;
        for (const OperatorSpec& op : config.set.operators) {
            if (op.family == OperatorFamily::standard_bit_mutation)
                throw std::invalid_argument("RunConfig: no fast probability model for standard bit mutation");
            has_unit = has_unit || op.m == 1;
        }
        if (!has_unit)
            throw std::invalid_argument("RunConfig: fast engine needs a single-bit operator to guarantee termination");
    }
}

std::vector<std::size_t> effective_targets(const RunConfig& config) {
    std::vector<std::size_t> targets = config.targets;
    if (targets.empty() || targets.back() != config.n) targets.push_back(config.n);
    return targets;
}

RunResult run_exact(const RunConfig& config, Rng& rng) {
    const std::size_t n = config.n;
    BitString x = BitString::random(n, rng);
    Fitness fit = leading_ones(x);
    MechanismState mechanism(config.mechanism, config.set.k(), rng);
    StepScratch scratch;
    scratch.prepare(config.set, n);

    const std::vector<std::size_t> targets = effective_targets(config);
    RunResult result;
    result.hitting.assign(targets.size(), 0);
    std::uint64_t evals = 0;
    std::size_t next = 0;
    while (next < targets.size() && fit >= targets[next]) result.hitting[next++] = 0;

    while (fit < n) {
        const StepOutcome step = hh_step(mechanism, config.set, x, fit, rng, scratch);
        evals += step.evals;
        while (next < targets.size() && fit >= targets[next]) result.hitting[next++] = evals;
    }
    result.total_evals = evals;
    return result;
}

RunResult run_fast(const RunConfig& config, Rng& rng) {
    const std::size_t n = config.n;
    const std::vector<OperatorSpec>& ops = config.set.operators;
    const std::size_t k = ops.size();
    const MechanismKind kind = config.mechanism.kind;
    const std::uint64_t tau = kind == MechanismKind::random_gradient ? 1 : config.mechanism.tau;
    const bool mixture = kind == MechanismKind::simple_random;

    std::vector<double> weights = config.mechanism.weights;
    if (!weights.empty()) {
        if (weights.size() != k) throw std::invalid_argument("run_fast: weight count must match k");
        double total = 0.0;
        for (double w : weights) total += w;
        for (double& w : weights) w /= total;
    }

    Fitness fit = sample_freeriders(n, rng);  // leading ones of a uniform random string
    const std::vector<std::size_t> targets = effective_targets(config);
    RunResult result;
    result.hitting.assign(targets.size(), 0);
    std::uint64_t evals = 0;
    std::size_t next = 0;
    while (next < targets.size() && fit >= targets[next]) result.hitting[next++] = 0;

    std::size_t current = mixture ? 0 : rng.below(k);
    while (fit < n) {
        if (mixture) {
            double p = 0.0;
            for (std::size_t idx = 0; idx < k; ++idx) {
                const double pm = p_improve(ops[idx], fit, n);
                p += weights.empty() ? pm / static_cast<double>(k) : weights[idx] * pm;
            }
            if (!(p > 0.0))
                throw std::runtime_error("run_fast: mechanism cannot improve from the current state");
            evals += sample_waiting_time(p, rng.uniform01());
        } else {
            const double p = p_improve(ops[current], fit, n);
            std::uint64_t waited = tau + 1;  // p = 0: the operator can never succeed here
            if (p > 0.0) waited = sample_waiting_time(p, rng.uniform01());
            if (waited > tau) {
                evals += tau;
                current = rng.below(k);
                continue;
            }
            evals += waited;
        }
        fit += 1 + sample_freeriders(n - fit - 1, rng);
        while (next < targets.size() && fit >= targets[next]) result.hitting[next++] = evals;
    }
    result.total_evals = evals;
    return result;
}

RunResult run_one(const RunConfig& config, std::uint64_t replicate) {
    validate_config(config);
    Rng rng(replicate_seed(config.seed, replicate));
    return config.engine == EngineKind::exact ? run_exact(config, rng) : run_fast(config, rng);
}

std::vector<RunResult> run_replicates(const RunConfig& config, std::size_t count, unsigned jobs) {
    validate_config(config);
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;

    std::vector<RunResult> results(count);
    if (jobs == 1 || count <= 1) {
        for (std::size_t r = 0; r < count; ++r) results[r] = run_one(config, r);
        return results;
    }

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t r = cursor.fetch_add(1);
            if (r >= count || failed.load()) return;
            try {
                results[r] = run_one(config, r);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(failure);
    return results;
}

namespace {

struct MeanSd {
    double mean;
    double sd;
};

MeanSd mean_sd(std::span<const RunResult> results, std::size_t target_index) {
    const std::size_t count = results.size();
    double sum = 0.0;
    for (const RunResult& r : results)
        sum += static_cast<double>(target_index == std::size_t(-1) ? r.total_evals
                                                                   : r.hitting[target_index]);
    const double mean = sum / static_cast<double>(count);
    if (count < 2) return {mean, 0.0};
    double sq = 0.0;
    for (const RunResult& r : results) {
        const double d = static_cast<double>(target_index == std::size_t(-1)
                                                 ? r.total_evals
                                                 : r.hitting[target_index]) -
                         mean;
        sq += d * d;
    }
    return {mean, std::sqrt(sq / static_cast<double>(count - 1))};
}

}  // namespace

AggregateStats aggregate(std::span<const RunResult> results, std::size_t n,
                         std::span<const std::size_t> targets) {
    if (results.empty()) throw std::invalid_argument("aggregate: empty result list");
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    AggregateStats stats;
    stats.replicates = results.size();
    const MeanSd total = mean_sd(results, std::size_t(-1));
    stats.mean = total.mean;
    stats.stddev = total.sd;
    stats.normalised_mean = total.mean / n2;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        if (t >= results.front().hitting.size())
            throw std::invalid_argument("aggregate: inhomogeneous results");
        const MeanSd hit = mean_sd(results, t);
        stats.per_target.push_back({targets[t], hit.mean, hit.sd, hit.mean / n2});
    }
    return stats;
}

std::string to_string(EngineKind engine) {
    return engine == EngineKind::exact ? "exact" : "fast";
}

}  // namespace hhlab
