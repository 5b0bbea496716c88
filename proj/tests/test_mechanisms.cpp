#include <doctest.h>

#include <set>
#include <vector>

#include "hhlab/mechanisms.hpp"

using namespace hhlab;

namespace {

MechanismState make_state(MechanismKind kind, std::size_t k, Rng& rng, std::uint64_t tau = 1,
                          std::vector<double> weights = {}) {
    MechanismConfig config;
    config.kind = kind;
    config.tau = tau;
    config.weights = std::move(weights);
    return MechanismState(config, k, rng);
}

}  // namespace

TEST_CASE("simple random selection") {
    Rng rng(100);
    auto state = make_state(MechanismKind::simple_random, 1, rng);
    for (int step = 0; step < 20; ++step) CHECK(state.select_operator(rng).index == 0);

    // degenerate weights pin the choice
    auto pinned = make_state(MechanismKind::simple_random, 2, rng, 1, {0.0, 1.0});
    for (int step = 0; step < 20; ++step) CHECK(pinned.select_operator(rng).index == 1);

    // roughly uniform otherwise
    auto uniform = make_state(MechanismKind::simple_random, 3, rng);
    std::vector<int> counts(3, 0);
    for (int step = 0; step < 30000; ++step) ++counts[uniform.select_operator(rng).index];
    for (int count : counts) CHECK(count == doctest::Approx(10000).epsilon(0.05));
}

TEST_CASE("permutation cycles one fixed random ordering") {
    Rng rng(101);
    const std::size_t k = 5;
    auto state = make_state(MechanismKind::permutation, k, rng);
    std::vector<std::size_t> first_cycle;
    for (std::size_t step = 0; step < k; ++step) first_cycle.push_back(state.select_operator(rng).index);
    CHECK(std::set<std::size_t>(first_cycle.begin(), first_cycle.end()).size() == k);
    for (int cycle = 0; cycle < 4; ++cycle)
        for (std::size_t step = 0; step < k; ++step)
            CHECK(state.select_operator(rng).index == first_cycle[step]);
}

TEST_CASE("random gradient keeps a successful operator") {
    Rng rng(102);
    auto state = make_state(MechanismKind::random_gradient, 4, rng);
    const OperatorChoice first = state.select_operator(rng);
    CHECK(first.fresh);
    state.note_outcome(true);
    const OperatorChoice second = state.select_operator(rng);
    CHECK(second.index == first.index);
    CHECK_FALSE(second.fresh);
    state.note_outcome(false);
    CHECK(state.select_operator(rng).fresh);  // one failure is the whole learning period
}

TEST_CASE("generalised random gradient redraws after exactly tau failures") {
    Rng rng(103);
    const std::uint64_t tau = 7;
    auto state = make_state(MechanismKind::generalised_random_gradient, 3, rng, tau);
    CHECK(state.select_operator(rng).fresh);
    for (int round = 0; round < 50; ++round) {
        // tau - 1 failures keep the operator, the tau-th triggers a redraw
        for (std::uint64_t fail = 1; fail < tau; ++fail) {
            state.note_outcome(false);
            CHECK(state.failure_count() == fail);
            CHECK_FALSE(state.select_operator(rng).fresh);
        }
        state.note_outcome(false);
        CHECK(state.failure_count() == tau);
        CHECK(state.select_operator(rng).fresh);
        CHECK(state.failure_count() == 0);
        // a success always resets the count
        state.note_outcome(false);
        state.note_outcome(true);
        CHECK(state.failure_count() == 0);
        CHECK_FALSE(state.select_operator(rng).fresh);
    }
}

TEST_CASE("grg with unit learning period matches random gradient decision for decision") {
    const std::size_t k = 3;
    Rng rng_feed(104);
    std::vector<bool> outcomes;
    for (int step = 0; step < 4000; ++step) outcomes.push_back(rng_feed.coin());

    Rng rng_a(555);
    Rng rng_b(555);
    auto grg = make_state(MechanismKind::generalised_random_gradient, k, rng_a, 1);
    auto gradient = make_state(MechanismKind::random_gradient, k, rng_b);
    for (bool improved : outcomes) {
        const OperatorChoice a = grg.select_operator(rng_a);
        const OperatorChoice b = gradient.select_operator(rng_b);
        CHECK(a.index == b.index);
        CHECK(a.fresh == b.fresh);
        grg.note_outcome(improved);
        gradient.note_outcome(improved);
    }
}

TEST_CASE("hh_step accepts only strict improvements") {
    Rng rng(105);
    const std::size_t n = 64;
    HeuristicSet set = HeuristicSet::canonical(OperatorFamily::mbitflip, 2);
    MechanismConfig config;
    config.kind = MechanismKind::random_gradient;
    MechanismState state(config, set.k(), rng);
    StepScratch scratch;
    scratch.prepare(set, n);
    BitString x = BitString::random(n, rng);
    Fitness fit = leading_ones(x);
    while (fit < n) {
        const Fitness before = fit;
        const StepOutcome step = hh_step(state, set, x, fit, rng, scratch);
        CHECK(step.evals == 1);
        if (step.improved) {
            CHECK(fit > before);
            CHECK(leading_ones(x) == fit);
        } else {
            CHECK(fit == before);
        }
    }
    CHECK(fit == n);
}

TEST_CASE("a one-bit flip on the last zero finishes the search") {
    Rng rng(106);
    const std::size_t n = 5;
    HeuristicSet set = HeuristicSet::canonical(OperatorFamily::mbitflip, 1);
    MechanismConfig config;
    MechanismState state(config, 1, rng);
    StepScratch scratch;
    scratch.prepare(set, n);
    BitString x(n);
    for (std::size_t pos = 0; pos + 1 < n; ++pos) x.flip(pos);  // 1^{n-1}0
    Fitness fit = leading_ones(x);
    CHECK(fit == n - 1);
    int improving_steps = 0;
    while (fit < n) improving_steps += hh_step(state, set, x, fit, rng, scratch).improved ? 1 : 0;
    CHECK(improving_steps == 1);
    CHECK(leading_ones(x) == n);
}

TEST_CASE("greedy consumes k evaluations per step regardless of outcome") {
    Rng rng(107);
    const std::size_t n = 48;
    for (std::size_t k : {std::size_t{2}, std::size_t{4}}) {
        HeuristicSet set = HeuristicSet::canonical(OperatorFamily::mbitflip, k);
        MechanismConfig config;
        config.kind = MechanismKind::greedy;
        MechanismState state(config, k, rng);
        StepScratch scratch;
        scratch.prepare(set, n);
        BitString x = BitString::random(n, rng);
        Fitness fit = leading_ones(x);
        while (fit < n) {
            const Fitness before = fit;
            const StepOutcome step = hh_step(state, set, x, fit, rng, scratch);
            CHECK(step.evals == k);
            CHECK(fit >= before);
            CHECK(leading_ones(x) == fit);
        }
    }
}

TEST_CASE("mechanism state validation") {
    Rng rng(108);
    MechanismConfig config;
    config.kind = MechanismKind::greedy;
    MechanismState greedy(config, 2, rng);
    CHECK_THROWS_AS((void)greedy.select_operator(rng), std::logic_error);

    config.kind = MechanismKind::simple_random;
    config.weights = {0.5, 0.25};
    CHECK_THROWS_AS(MechanismState(config, 3, rng), std::invalid_argument);

    config.kind = MechanismKind::generalised_random_gradient;
    config.weights.clear();
    config.tau = 0;
    CHECK_THROWS_AS(MechanismState(config, 2, rng), std::invalid_argument);
}

TEST_CASE("mutated fitness handles cancelling and prefix-breaking flips") {
    Rng rng(109);
    BitString x(12);
    for (std::size_t pos : {std::size_t{0}, std::size_t{1}, std::size_t{2}, std::size_t{4},
                            std::size_t{5}, std::size_t{8}})
        x.flip(pos);  // 111011001000..., fitness 3
    const Fitness fit = leading_ones(x);
    CHECK(fit == 3);
    std::vector<std::size_t> effective;

    CHECK(mutated_fitness(x, fit, {3, 3}, effective) == 3);        // duplicates cancel
    CHECK(mutated_fitness(x, fit, {1}, effective) == 1);           // prefix broken
    CHECK(mutated_fitness(x, fit, {3}, effective) == 6);           // extends through 4,5
    CHECK(mutated_fitness(x, fit, {3, 6}, effective) == 7);        // flipped suffix bit joins the run
    CHECK(mutated_fitness(x, fit, {6}, effective) == 3);           // first zero untouched
    CHECK(mutated_fitness(x, fit, {3, 4}, effective) == 4);        // toggling 4 off stops the run
    CHECK(mutated_fitness(x, fit, {0, 0, 3}, effective) == 6);     // even flips on the prefix cancel
    CHECK(mutated_fitness(x, fit, {3, 4, 4, 6, 7}, effective) == 9);
}
