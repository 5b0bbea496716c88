#include <cmath>
#include <cstddef>
#include <vector>

#include "hhlab/experiment.hpp"
#include "hhlab/probability.hpp"

namespace hhlab {

namespace {

// Exhaustive m-subset enumeration of the without-replacement improvement
// probability; independent of the closed-form route it checks.
double rls_probability_by_enumeration(std::size_t m, std::size_t i, std::size_t n) {
    std::vector<std::size_t> subset(m);
    for (std::size_t j = 0; j < m; ++j) subset[j] = j;
    std::uint64_t total = 0;
    std::uint64_t improving = 0;
    for (;;) {
        ++total;
        bool contains_zero = false;
        bool breaks_prefix = false;
        for (std::size_t pos : subset) {
            if (pos == i) contains_zero = true;
            if (pos < i) breaks_prefix = true;
        }
        if (contains_zero && !breaks_prefix) ++improving;
        // next combination in lexicographic order
        std::size_t j = m;
        while (j-- > 0) {
            if (subset[j] != j + n - m) {
                ++subset[j];
                for (std::size_t l = j + 1; l < m; ++l) subset[l] = subset[l - 1] + 1;
                break;
            }
            if (j == 0) return static_cast<double>(improving) / static_cast<double>(total);
        }
    }
}

ValidationCheck make(const std::string& name, const std::string& source, double expected,
                     double observed, double tolerance) {
    return {name, source, expected, observed, tolerance, std::abs(observed - expected) <= tolerance};
}

ValidationCheck bounded(const std::string& name, const std::string& source, double observed,
                        double lo, double hi) {
    return {name, source, hi, observed, hi - lo, observed >= lo && observed <= hi};
}

}  // namespace

std::vector<ValidationCheck> run_validation(unsigned jobs) {
    std::vector<ValidationCheck> checks;

    // geometric waiting-time sampling
    checks.push_back(make("waiting-time-p0.5-u0.74", "analytic", 2.0,
                          static_cast<double>(sample_waiting_time(0.5, 0.74)), 0.0));
    checks.push_back(make("waiting-time-u0", "analytic", 1.0,
                          static_cast<double>(sample_waiting_time(0.001, 0.0)), 0.0));
    {
        Rng rng(20240001);
        const double p = 1e-4;
        double sum = 0.0;
        const std::size_t draws = 1000000;
        for (std::size_t d = 0; d < draws; ++d)
            sum += static_cast<double>(sample_waiting_time(p, rng.uniform01()));
        checks.push_back(make("waiting-time-mean", "simulation", 1.0 / p,
                              sum / static_cast<double>(draws), 0.01 / p));
    }

    // free-rider distribution against the truncated-geometric mass function
    {
        Rng rng(20240002);
        const std::size_t remaining = 30;
        const std::size_t draws = 1000000;
        const std::size_t cut = 16;  // group the tail so expected counts stay large
        std::vector<double> counts(cut + 1, 0.0);
        for (std::size_t d = 0; d < draws; ++d) {
            const std::size_t g = sample_freeriders(remaining, rng);
            counts[g < cut ? g : cut] += 1.0;
        }
        double chi2 = 0.0;
        for (std::size_t g = 0; g <= cut; ++g) {
            const double mass = g < cut ? std::ldexp(1.0, -static_cast<int>(g) - 1)
                                        : std::ldexp(1.0, -static_cast<int>(cut));
            const double expected = mass * static_cast<double>(draws);
            chi2 += (counts[g] - expected) * (counts[g] - expected) / expected;
        }
        checks.push_back(bounded("freerider-chi-square", "simulation", chi2, 0.0, 39.25));
    }

    // enumeration oracle versus the dominant-term model
    {
        double worst1 = 0.0;
        double worst2 = 0.0;
        for (std::size_t n = 2; n <= 12; ++n) {
            for (std::size_t i = 0; i < n; ++i) {
                worst1 = std::max(worst1, std::abs(p_improve_exact_mbitflip(1, i, n) -
                                                   p_improve_leading(1, i, n)));
                worst2 = std::max(worst2, std::abs(p_improve_exact_mbitflip(2, i, n) -
                                                   p_improve_leading(2, i, n)));
            }
        }
        checks.push_back(make("exact-vs-dominant-m1", "enumeration", 0.0, worst1, 1e-15));
        checks.push_back(make("exact-vs-dominant-m2", "enumeration", 0.0, worst2, 1e-15));

        double lowest = 1e9;
        double highest = -1e9;
        for (std::size_t n = 6; n <= 20; ++n) {
            for (std::size_t i = 0; i < n; ++i) {
                const double gap = (p_improve_exact_mbitflip(3, i, n) - p_improve_leading(3, i, n)) *
                                   static_cast<double>(n) * static_cast<double>(n);
                lowest = std::min(lowest, gap);
                highest = std::max(highest, gap);
            }
        }
        checks.push_back(bounded("exact-vs-dominant-m3-gap-low", "enumeration", lowest, 0.0, 20.0));
        checks.push_back(bounded("exact-vs-dominant-m3-gap-high", "enumeration", highest, 0.0, 20.0));
    }

    // closed-form without-replacement probability versus subset enumeration
    {
        double worst = 0.0;
        for (std::size_t n = 2; n <= 12; ++n)
            for (std::size_t m = 1; m <= std::min<std::size_t>(4, n); ++m)
                for (std::size_t i = 0; i < n; ++i)
                    worst = std::max(worst, std::abs(p_improve_rls(m, i, n) -
                                                     rls_probability_by_enumeration(m, i, n)));
        checks.push_back(make("rls-vs-enumeration", "enumeration", 0.0, worst, 1e-15));
    }

    // optimal-operator regions versus an exhaustive argmax scan
    {
        std::size_t mismatches = 0;
        const std::size_t n = 1000;
        for (std::size_t k = 1; k <= 6; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                double best = 0.0;
                for (std::size_t m = 1; m <= k; ++m)
                    best = std::max(best, p_improve_leading(m, i, n));
                const std::size_t region = optimal_operator(i, k, n);
                if (p_improve_leading(region, i, n) < best * (1.0 - 1e-12)) ++mismatches;
            }
        }
        checks.push_back(make("optimal-operator-argmax", "enumeration", 0.0,
                              static_cast<double>(mismatches), 0.0));
    }

    // upper-bound regression over the pinned reference grid
    {
        struct Cell {
            std::size_t k;
            double tau;
            double value;
        };
        const Cell cells[] = {{2, 5, 0.46493},  {2, 50, 0.42363},  {2, 100, 0.42329},
                              {3, 5, 0.46802},  {3, 50, 0.40579},  {3, 100, 0.40525},
                              {4, 5, 0.48102},  {4, 50, 0.39897},  {4, 100, 0.39830},
                              {5, 5, 0.49630},  {5, 50, 0.39568},  {5, 100, 0.39492}};
        double worst = 0.0;
        double drift = 0.0;
        for (const Cell& cell : cells) {
            TheoryQuery query;
            query.k = cell.k;
            query.tau_over_n = cell.tau;
            query.w = 100000;
            worst = std::max(worst, std::abs(grg_upper_bound(query).value - cell.value));
            TheoryQuery coarse = query;
            coarse.w = 10000;
            drift = std::max(drift, std::abs(grg_upper_bound(coarse).value -
                                             grg_upper_bound(query).value));
        }
        checks.push_back(make("grg-bound-regression", "analytic", 0.0, worst, 5e-4));
        // the large-k columns where the bound is tight
        const Cell wide[] = {{11, 100, 0.38987}, {18, 200, 0.38899}};
        double worst_wide = 0.0;
        for (const Cell& cell : wide) {
            TheoryQuery query;
            query.k = cell.k;
            query.tau_over_n = cell.tau;
            query.w = 100000;
            worst_wide = std::max(worst_wide, std::abs(grg_upper_bound(query).value - cell.value));
            TheoryQuery coarse = query;
            coarse.w = 10000;
            drift = std::max(drift, std::abs(grg_upper_bound(coarse).value -
                                             grg_upper_bound(query).value));
        }
        checks.push_back(make("grg-bound-large-k", "analytic", 0.0, worst_wide, 5e-4));
        checks.push_back(make("grg-bound-stage-convergence", "analytic", 0.0, drift, 1e-3));
    }

    // the gradient mechanisms coincide at a learning period of one
    {
        RunConfig config;
        config.n = 100;
        config.set = HeuristicSet::canonical(OperatorFamily::mbitflip, 2);
        config.engine = EngineKind::exact;
        config.seed = 77001;
        config.mechanism.kind = MechanismKind::random_gradient;
        RunConfig grg = config;
        grg.mechanism.kind = MechanismKind::generalised_random_gradient;
        grg.mechanism.tau = 1;
        std::size_t mismatches = 0;
        for (std::uint64_t r = 0; r < 100; ++r)
            if (!(run_one(config, r) == run_one(grg, r))) ++mismatches;
        checks.push_back(make("grg-tau1-equals-random-gradient", "definition", 0.0,
                              static_cast<double>(mismatches), 0.0));
    }

    // fast engine against the exact engine where the probability model is exact
    {
        RunConfig config;
        config.n = 100;
        config.set = HeuristicSet::canonical(OperatorFamily::rls, 2);
        config.seed = 77002;
        config.mechanism.kind = MechanismKind::simple_random;
        config.engine = EngineKind::exact;
        const std::size_t reps = 4000;
        const auto exact = aggregate(run_replicates(config, reps, jobs), config.n, {});
        config.engine = EngineKind::fast;
        const auto fast = aggregate(run_replicates(config, reps, jobs), config.n, {});
        const double se = std::hypot(exact.stddev, fast.stddev) / std::sqrt(static_cast<double>(reps));
        checks.push_back(bounded("engine-equivalence-z", "simulation",
                                 std::abs(exact.mean - fast.mean) / se, 0.0, 2.0));
    }

    // fixed-target sums at X = n collapse to the full-run constants
    {
        TheoryQuery query;
        query.k = 3;
        query.n = 10000;
        query.x_over_n = 1.0;
        const double sr_full = rt_simple_random_k(3, 10000);
        const double sr_ft = fixed_target_theory(query, FixedTargetMechanism::simple_random_k).value;
        checks.push_back(make("fixed-target-simple-random-full", "analytic", sr_full, sr_ft, 0.0));
        query.tau_over_n = 10.0;
        query.w = 1000;
        const double grg_full = grg_upper_bound(query).value;
        const double grg_ft = fixed_target_theory(query, FixedTargetMechanism::grg).value;
        checks.push_back(make("fixed-target-grg-full", "analytic", grg_full, grg_ft, 0.0));
    }

    // monotonicity of the closed-form constants
    {
        std::size_t violations = 0;
        double previous = 1e9;
        for (std::size_t k = 1; k <= 18; ++k) {
            const double value = rt_opt_k(k, 1000000);
            if (!(value < previous)) ++violations;
            previous = value;
        }
        checks.push_back(make("opt-constant-decreasing", "analytic", 0.0,
                              static_cast<double>(violations), 0.0));
        violations = 0;
        previous = 0.0;
        for (std::size_t k = 1; k <= 6; ++k) {
            const double value = rt_simple_random_k(k, 1000000);
            if (!(value > previous)) ++violations;
            previous = value;
        }
        checks.push_back(make("simple-random-constant-increasing", "analytic", 0.0,
                              static_cast<double>(violations), 0.0));
    }

    return checks;
}

}  // namespace hhlab
