#include <doctest.h>

#include <cmath>

#include "hhlab/theory.hpp"

using namespace hhlab;

namespace {

TheoryQuery grg_query(std::size_t k, double tau_over_n, std::size_t w = 100000) {
    TheoryQuery query;
    query.k = k;
    query.tau_over_n = tau_over_n;
    query.w = w;
    return query;
}

}  // namespace

TEST_CASE("two-operator simple random constants") {
    CHECK(rt_simple_random_two(0.5) == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-12));
    CHECK(rt_simple_random_two(1.0) == 0.5);
    CHECK(std::isinf(rt_simple_random_two(0.0)));
    CHECK(rt_simple_random_two(0.25) == doctest::Approx(std::log(7.0) / 3.0).epsilon(1e-12));
    CHECK(rt_simple_random_two(0.75) == doctest::Approx(std::log(5.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS((void)rt_simple_random_two(1.5), std::invalid_argument);
}

TEST_CASE("best-possible constants per operator count") {
    const std::size_t n = 1000000;
    CHECK(rt_opt_k(1, n) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rt_opt_k(2, n) == doctest::Approx(0.42329).epsilon(2e-4));
    CHECK(rt_opt_k(3, n) == doctest::Approx(0.40525).epsilon(2e-4));
    CHECK(rt_opt_k(4, n) == doctest::Approx(0.39830).epsilon(2e-4));
    CHECK(rt_opt_k(5, n) == doctest::Approx(0.39492).epsilon(2e-4));
    CHECK(grg_optimal_constant(2) == doctest::Approx(0.42329).epsilon(1e-4));
    CHECK(grg_optimal_constant(4) == doctest::Approx(0.39830).epsilon(1e-4));

    double previous = 1.0;
    for (std::size_t k = 1; k <= 18; ++k) {
        const double value = rt_opt_k(k, n);
        CHECK(value < previous);
        previous = value;
    }
    CHECK(previous < 0.389);
}

TEST_CASE("uniform simple random constants per operator count") {
    const std::size_t n = 1000000;
    CHECK(rt_simple_random_k(1, n) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rt_simple_random_k(2, n) == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-5));
    CHECK(rt_simple_random_k(3, n) == doctest::Approx(0.65281).epsilon(2e-4));
    CHECK(rt_simple_random_k(2, n) ==
          doctest::Approx(rt_simple_random_two(0.5)).epsilon(1e-5));
    double previous = 0.0;
    for (std::size_t k = 1; k <= 6; ++k) {
        const double value = rt_simple_random_k(k, n);
        CHECK(value > previous);
        previous = value;
    }
}

TEST_CASE("stage weights of the upper bound") {
    const std::size_t w = 1000;
    CHECK(m_weight(2, w, w, 7.0) == 7.0);                    // final stage is capped at tau/n
    CHECK(m_weight(5, w, w, 7.0) == 7.0);
    CHECK(m_weight(1, 3, w, 5.0) == 1.0);                    // min(tau/n, 1)
    CHECK(m_weight(1, 3, w, 0.25) == 0.25);
    CHECK(m_weight(2, w / 2, w, 50.0) == doctest::Approx(1.0));  // 1/(2 (1 - 1/2))
    CHECK(m_weight(2, w - 1, w, 0.5) == 0.5);                // waiting time exceeds tau/n
    CHECK_THROWS_AS((void)m_weight(2, 0, w, 1.0), std::invalid_argument);
}

TEST_CASE("upper bound reproduces the reference grid") {
    CHECK(grg_upper_bound(grg_query(2, 5)).value == doctest::Approx(0.46493).epsilon(2e-3));
    CHECK(std::abs(grg_upper_bound(grg_query(2, 5)).value - 0.46493) < 5e-4);
    CHECK(std::abs(grg_upper_bound(grg_query(2, 30)).value - 0.42385) < 5e-4);
    CHECK(std::abs(grg_upper_bound(grg_query(2, 50)).value - 0.42363) < 5e-4);
    CHECK(std::abs(grg_upper_bound(grg_query(2, 100)).value - 0.42329) < 5e-4);
    CHECK(std::abs(grg_upper_bound(grg_query(5, 100)).value - 0.39492) < 5e-4);
    CHECK(std::abs(grg_upper_bound(grg_query(11, 100)).value - 0.38987) < 5e-4);
    CHECK(std::abs(grg_upper_bound(grg_query(18, 200)).value - 0.38899) < 5e-4);

    // a coarser stage grid reproduces the anytime plot legend
    CHECK(std::abs(grg_upper_bound(grg_query(2, 10, 1000)).value - 0.42815) < 5e-4);
    CHECK(std::abs(grg_upper_bound(grg_query(3, 10, 1000)).value - 0.41202) < 1e-3);
    CHECK(std::abs(grg_upper_bound(grg_query(4, 10, 1000)).value - 0.40632) < 1e-3);

    // one operator degenerates to plain local search
    CHECK(grg_upper_bound(grg_query(1, 5)).value == 0.5);
    CHECK(grg_upper_bound(grg_query(1, 100)).value == 0.5);
}

TEST_CASE("upper bound approaches the optimum as tau grows") {
    for (std::size_t k : {std::size_t{2}, std::size_t{3}, std::size_t{4}, std::size_t{5}}) {
        const double bound = grg_upper_bound(grg_query(k, 100)).value;
        const double opt = rt_opt_k(k, 1000000);
        CHECK(bound - opt >= -1e-6);
        CHECK(bound - opt <= 1e-3);
    }
    // three operators with a generous learning period beat the two-operator optimum
    for (double tau : {30.0, 50.0, 100.0})
        CHECK(grg_upper_bound(grg_query(3, tau)).value < 0.42329);
}

TEST_CASE("validity domain and overflow guard flags") {
    TheoryQuery query = grg_query(2, 0.4 * std::log(1e6));  // tau = 0.4 n ln n at n = 1e6
    query.n = 1000000;
    CHECK(grg_upper_bound(query).tau_in_domain);
    query.tau_over_n = 0.6 * std::log(1e6);
    CHECK_FALSE(grg_upper_bound(query).tau_in_domain);

    const BoundValue guarded = grg_upper_bound(grg_query(18, 50));
    CHECK(guarded.guarded);  // k tau/n = 900 would overflow a naive evaluation
    CHECK(std::isfinite(guarded.value));
    CHECK(guarded.value > 0.38);
    CHECK_FALSE(grg_upper_bound(grg_query(2, 50)).guarded);

    CHECK(min_valid_n(2, 5.0, 0.01) == doctest::Approx(std::exp(5.0 / 0.49)).epsilon(1e-12));
}

TEST_CASE("asymptotic learning-period marker") {
    TheoryQuery query = grg_query(3, 0.0);
    query.tau_asymptotic = true;
    query.n = 1000000;
    CHECK(grg_upper_bound(query).value == rt_opt_k(3, 1000000));
}

TEST_CASE("fixed-target constants") {
    TheoryQuery query;
    query.n = 10000;
    query.k = 2;
    query.x_over_n = 1.0;

    // the full-target sum is the full-run constant, bit for bit
    CHECK(fixed_target_theory(query, FixedTargetMechanism::simple_random_k).value ==
          rt_simple_random_k(2, query.n));
    query.tau_over_n = 10.0;
    query.w = 1000;
    CHECK(fixed_target_theory(query, FixedTargetMechanism::grg).value ==
          grg_upper_bound(query).value);

    // anytime advantage of larger operator sets at the half-way target
    TheoryQuery half;
    half.n = 10000;
    half.x_over_n = 0.5;
    half.k = 1;
    const double rls = fixed_target_theory(half, FixedTargetMechanism::simple_random_k).value;
    half.k = 2;
    const double two = fixed_target_theory(half, FixedTargetMechanism::simple_random_k).value;
    half.k = 3;
    const double three = fixed_target_theory(half, FixedTargetMechanism::simple_random_k).value;
    CHECK(rls == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(1.0 - two / rls == doctest::Approx(0.189).epsilon(0.03));
    CHECK(1.0 - three / rls == doctest::Approx(0.260).epsilon(0.03));

    CHECK_THROWS_AS((void)fixed_target_theory(TheoryQuery{.x_over_n = 0.0},
                                              FixedTargetMechanism::simple_random_k),
                    std::invalid_argument);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS((void)grg_upper_bound(grg_query(2, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS((void)grg_upper_bound(grg_query(2, -1.0)), std::invalid_argument);
    TheoryQuery query = grg_query(2, 5.0);
    query.w = 0;
    CHECK_THROWS_AS((void)grg_upper_bound(query), std::invalid_argument);
    CHECK_THROWS_AS((void)rt_opt_k(0, 100), std::invalid_argument);
    CHECK_THROWS_AS((void)rt_simple_random_k(0, 100), std::invalid_argument);
}
