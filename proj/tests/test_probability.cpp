#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hhlab/probability.hpp"

using namespace hhlab;

TEST_CASE("dominant-term improvement probabilities") {
    const std::size_t n = 1000;
    for (std::size_t i : {std::size_t{0}, std::size_t{250}, std::size_t{999}})
        CHECK(p_improve_leading(1, i, n) == doctest::Approx(1.0 / n).epsilon(1e-14));
    for (std::size_t i : {std::size_t{0}, std::size_t{123}, std::size_t{999}})
        CHECK(p_improve_leading(2, i, n) ==
              doctest::Approx(2.0 * (n - i - 1) / (static_cast<double>(n) * n)).epsilon(1e-14));

    // strictly decreasing in i for m >= 2
    for (std::size_t m : {std::size_t{2}, std::size_t{3}, std::size_t{5}})
        for (std::size_t i = 1; i < n; ++i)
            CHECK(p_improve_leading(m, i, n) < p_improve_leading(m, i - 1, n));

    // the one- and two-flip curves cross exactly at i = n/2 - 1
    CHECK(p_improve_leading(1, n / 2 - 1, n) ==
          doctest::Approx(p_improve_leading(2, n / 2 - 1, n)).epsilon(1e-14));
}

TEST_CASE("enumeration oracle for the with-replacement operator") {
    // one draw must hit the first zero
    for (std::size_t n : {std::size_t{3}, std::size_t{7}, std::size_t{12}})
        for (std::size_t i = 0; i < n; ++i)
            CHECK(p_improve_exact_mbitflip(1, i, n) == doctest::Approx(1.0 / n).epsilon(1e-14));

    CHECK(p_improve_exact_mbitflip(2, 0, 4) == doctest::Approx(6.0 / 16.0));

    // prefix flip-and-reflip draws add non-negative mass for m >= 3
    const double exact = p_improve_exact_mbitflip(3, 0, 5);
    CHECK(exact > p_improve_leading(3, 0, 5));
    for (std::size_t n = 6; n <= 12; ++n)
        for (std::size_t i = 0; i < n; ++i)
            CHECK(p_improve_exact_mbitflip(3, i, n) >= p_improve_leading(3, i, n) - 1e-15);

    CHECK_THROWS_AS((void)p_improve_exact_mbitflip(2, 0, 100000), std::invalid_argument);
}

TEST_CASE("without-replacement improvement probability") {
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(p_improve_rls(1, i, 10) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(p_improve_rls(2, 9, 10) == 0.0);  // i > n - m leaves nothing to flip
    CHECK(p_improve_rls(2, 2, 6) == doctest::Approx(0.2).epsilon(1e-14));  // C(3,1)/C(6,2)

    // matches the one-flip dominant term exactly; stays within (m(m-1)+1)/n^2 beyond
    for (std::size_t n : {std::size_t{20}, std::size_t{50}, std::size_t{200}}) {
        for (std::size_t m = 1; m <= 5; ++m) {
            for (std::size_t i = 0; i < n; ++i) {
                const double gap = std::abs(p_improve_rls(m, i, n) - p_improve_leading(m, i, n));
                const double cap = (static_cast<double>(m * (m - 1)) + 1.0) /
                                   (static_cast<double>(n) * static_cast<double>(n));
                if (m == 1)
                    CHECK(gap == 0.0);
                else
                    CHECK(gap <= cap);
            }
        }
    }

    // stays finite at sizes where factorials would overflow
    CHECK(p_improve_rls(2, 0, 100000000) == doctest::Approx(2.0 / 1e8).epsilon(1e-7));
    CHECK(std::isfinite(p_improve_rls(8, 12345678, 100000000)));
}

TEST_CASE("crossover points between neighbourhood sizes") {
    const std::size_t n = 1000;
    CHECK(crossover_point(1, 2, n) == doctest::Approx(n / 2.0 - 1.0).epsilon(1e-12));
    for (std::size_t m = 1; m <= 5; ++m)
        CHECK(crossover_point(m, m + 1, n) ==
              doctest::Approx(static_cast<double>(n) / (m + 1) - 1.0).epsilon(1e-12));

    // direct comparison over every state, allowing the exact tie at the threshold
    const std::size_t big = 1200;
    const double threshold = crossover_point(2, 3, big);
    for (std::size_t i = 0; i < big; ++i) {
        const double pa = p_improve_leading(2, i, big);
        const double pb = p_improve_leading(3, i, big);
        if (static_cast<double>(i) < threshold - 1e-9)
            CHECK(pb >= pa * (1 - 1e-12));
        else if (static_cast<double>(i) > threshold + 1e-9)
            CHECK(pa >= pb * (1 - 1e-12));
    }
    CHECK_THROWS_AS((void)crossover_point(2, 2, n), std::invalid_argument);
}

TEST_CASE("optimal operator regions") {
    CHECK(optimal_operator(999, 2, 1000) == 1);
    CHECK(optimal_operator(0, 5, 1000) == 5);

    // regions cover [0, n) and agree with an exhaustive argmax scan
    for (std::size_t k = 1; k <= 6; ++k) {
        const std::size_t n = 200;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t region = optimal_operator(i, k, n);
            CHECK(region >= 1);
            CHECK(region <= k);
            double best = 0.0;
            for (std::size_t m = 1; m <= k; ++m) best = std::max(best, p_improve_leading(m, i, n));
            CHECK(p_improve_leading(region, i, n) >= best * (1 - 1e-12));
        }
    }
}
