#include "hhlab/theory.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hhlab/probability.hpp"

namespace hhlab {

namespace {

bool tau_in_domain(const TheoryQuery& q) {
    const double slack = 1.0 / static_cast<double>(q.k) - q.epsilon_guard;
    if (!(slack > 0.0)) return false;
    return q.tau_over_n <= slack * std::log(static_cast<double>(q.n));
}

/// Stage sum of the upper bound over stages 1..j_max (j_max = w gives the
/// full-run bound). Each stage is evaluated relative to its largest exponent
/// so arbitrarily large k * tau/n never overflows.
double grg_stage_sum(std::size_t k, double t, std::size_t w, std::size_t j_max) {
    std::vector<double> exponents(k);
    NeumaierSum total;
    for (std::size_t j = 1; j <= j_max; ++j) {
        const double y = 1.0 - static_cast<double>(j) / static_cast<double>(w);
        double largest = -std::numeric_limits<double>::infinity();
        for (std::size_t m = 1; m <= k; ++m) {
            const double e = static_cast<double>(m) * t * powi(y, m - 1);
            exponents[m - 1] = e;
            largest = std::max(largest, e);
        }
        const double scale = std::exp(-largest);  // underflow to 0 is harmless
        double numerator = static_cast<double>(k) * t * scale;
        double denominator = -static_cast<double>(k) * scale;
        for (std::size_t m = 1; m <= k; ++m) {
            const double e = std::exp(exponents[m - 1] - largest);
            numerator += e * m_weight(m, j, w, t);
            denominator += e;
        }
        total.add(numerator / (static_cast<double>(w) * denominator));
    }
    return 0.5 * total.value();
}

}  // namespace

double m_weight(std::size_t m, std::size_t j, std::size_t w, double tau_over_n) {
    if (j < 1 || j > w) throw std::invalid_argument("m_weight: stage out of range");
    if (m == 1) return std::min(tau_over_n, 1.0);
    const double y = 1.0 - static_cast<double>(j) / static_cast<double>(w);
    if (j == w) return tau_over_n;
    const double wait = 1.0 / (static_cast<double>(m) * powi(y, m - 1));
    return wait > tau_over_n ? tau_over_n : wait;
}

double rt_simple_random_two(double p1) {
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw std::invalid_argument("rt_simple_random_two: p1 must lie in [0, 1]");
    if (p1 == 0.0) return std::numeric_limits<double>::infinity();
    if (p1 == 1.0) return 0.5;
    return std::log((2.0 - p1) / p1) / (4.0 * (1.0 - p1));
}

double rt_opt_k(std::size_t k, std::size_t n) {
    if (k == 0 || n < k) throw std::invalid_argument("rt_opt_k: requires 1 <= k <= n");
    const auto dn = static_cast<double>(n);
    NeumaierSum sum;
    // best operator k on [0, floor(n/k) - 1]
    for (std::size_t i = 0; i < n / k; ++i) {
        const double y = static_cast<double>(n - i - 1) / dn;
        sum.add(dn / (static_cast<double>(k) * powi(y, k - 1)));
    }
    // operator m on [floor(n/(m+1)), floor(n/m) - 1]
    for (std::size_t m = 1; m < k; ++m) {
        for (std::size_t i = n / (m + 1); i < n / m; ++i) {
            const double y = static_cast<double>(n - i - 1) / dn;
            sum.add(dn / (static_cast<double>(m) * powi(y, m - 1)));
        }
    }
    return 0.5 * sum.value() / (dn * dn);
}

namespace {

double simple_random_partial_sum(std::size_t k, std::size_t upto, std::size_t n) {
    const auto dn = static_cast<double>(n);
    NeumaierSum sum;
    for (std::size_t i = 0; i < upto; ++i) {
        const double y = static_cast<double>(n - i - 1) / dn;
        // Horner evaluation of sum_m m y^(m-1)
        double mixture = static_cast<double>(k);
        for (std::size_t m = k; m-- > 1;) mixture = mixture * y + static_cast<double>(m);
        sum.add(dn / mixture);
    }
    return 0.5 * static_cast<double>(k) * sum.value() / (dn * dn);
}

}  // namespace

double rt_simple_random_k(std::size_t k, std::size_t n) {
    if (k == 0 || n == 0) throw std::invalid_argument("rt_simple_random_k: requires k >= 1, n >= 1");
    return simple_random_partial_sum(k, n, n);
}

BoundValue grg_upper_bound(const TheoryQuery& query) {
    if (query.k == 0) throw std::invalid_argument("grg_upper_bound: k must be at least 1");
    if (query.tau_asymptotic)
        return {rt_opt_k(query.k, query.n), true, false};
    if (query.w < 1 || !(query.tau_over_n > 0.0))
        throw std::invalid_argument("grg_upper_bound: requires w >= 1 and tau > 0");
    if (query.k == 1)  // a single operator is plain local search whatever tau is
        return {0.5, tau_in_domain(query), false};
    BoundValue out;
    out.value = grg_stage_sum(query.k, query.tau_over_n, query.w, query.w);
    out.tau_in_domain = tau_in_domain(query);
    out.guarded = static_cast<double>(query.k) * query.tau_over_n > 700.0;
    return out;
}

double grg_optimal_constant(std::size_t k) {
    TheoryQuery query;
    return rt_opt_k(k, query.n);
}

BoundValue fixed_target_theory(const TheoryQuery& query, FixedTargetMechanism mechanism) {
    if (!(query.x_over_n > 0.0 && query.x_over_n <= 1.0))
        throw std::invalid_argument("fixed_target_theory: X must lie in (0, n]");
    if (mechanism == FixedTargetMechanism::simple_random_k) {
        const auto x = static_cast<std::size_t>(
            std::llround(query.x_over_n * static_cast<double>(query.n)));
        return {simple_random_partial_sum(query.k, std::min(x, query.n), query.n), true, false};
    }
    if (query.tau_asymptotic)
        throw std::invalid_argument("fixed_target_theory: fixed targets need a finite tau");
    if (query.w < 1 || !(query.tau_over_n > 0.0))
        throw std::invalid_argument("fixed_target_theory: requires w >= 1 and tau > 0");
    if (query.k == 1) return {0.5 * query.x_over_n, tau_in_domain(query), false};
    const auto stages = static_cast<std::size_t>(
        std::ceil(query.x_over_n * static_cast<double>(query.w)));
    BoundValue out;
    out.value = grg_stage_sum(query.k, query.tau_over_n, query.w, std::min(stages, query.w));
    out.tau_in_domain = tau_in_domain(query);
    out.guarded = static_cast<double>(query.k) * query.tau_over_n > 700.0;
    return out;
}

double min_valid_n(std::size_t k, double tau_over_n, double epsilon_guard) {
    const double slack = 1.0 / static_cast<double>(k) - epsilon_guard;
    if (!(slack > 0.0)) return std::numeric_limits<double>::infinity();
    return std::exp(tau_over_n / slack);
}

}  // namespace hhlab
