#pragma once

#include <cstddef>
#include <cmath>

#include "hhlab/operators.hpp"

namespace hhlab {

/// Compensated (Neumaier) accumulator for long sums of mixed magnitudes.
class NeumaierSum {
  public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Parameters for evaluating the closed-form runtime bounds. All results are
/// leading constants normalised by n^2. The without-replacement family reuses
/// the with-replacement formulas; the distinction is carried for reporting
/// only, since the constants agree up to lower-order terms.
struct TheoryQuery {
    std::size_t k = 2;
    double tau_over_n = 0.0;     ///< learning period in units of n
    bool tau_asymptotic = false; ///< selects the large-tau simplification
    std::size_t w = 100000;      ///< stage count of the bound
    double p1 = 0.5;             ///< 1-bit-flip weight (two-operator Simple Random)
    double x_over_n = 1.0;       ///< fixed-target fraction in (0, 1]
    OperatorFamily family = OperatorFamily::mbitflip;
    double epsilon_guard = 0.01; ///< margin in tau <= (1/k - eps) n ln n
    std::size_t n = 10000000;    ///< summation resolution / reference size
};

struct BoundValue {
    double value = 0.0;
    bool tau_in_domain = true;  ///< tau <= (1/k - eps) n ln n at the reference n
    bool guarded = false;       ///< exponentials exceeded double range; evaluated in log space
};

enum class FixedTargetMechanism { simple_random_k, grg };

/// Stage weight of the upper-bound sum: min of tau/n and the normalised
/// expected waiting time of the m-flip operator in stage j, with the final
/// stage capped at tau/n.
double m_weight(std::size_t m, std::size_t j, std::size_t w, double tau_over_n);

/// Expected-runtime leading constant of the two-operator Simple Random
/// mechanism with 1-bit-flip weight p1: (1/(4(1-p1))) ln((2-p1)/p1).
/// Returns 0.5 for p1 = 1 and +infinity for p1 = 0 (divergence).
double rt_simple_random_two(double p1);

/// Best-possible leading constant with operators 1..k: each state is served
/// by the operator with the highest success probability, regions resolved
/// with floor boundaries. Evaluated by direct summation at resolution n.
double rt_opt_k(std::size_t k, std::size_t n);

/// Leading constant of the uniform Simple Random mechanism with k operators.
double rt_simple_random_k(std::size_t k, std::size_t n);

/// Stage-sum upper bound on the k-operator generalised-random-gradient
/// runtime at finite tau (or the large-tau limit when tau_asymptotic is set).
BoundValue grg_upper_bound(const TheoryQuery& query);

/// Large-tau limit of the bound; equals the best-possible constant.
double grg_optimal_constant(std::size_t k);

/// Leading constant for first reaching LeadingOnes value X = x_over_n * n.
BoundValue fixed_target_theory(const TheoryQuery& query, FixedTargetMechanism mechanism);

/// Smallest problem size for which tau = tau_over_n * n satisfies the bound's
/// validity condition tau <= (1/k - eps) n ln n.
double min_valid_n(std::size_t k, double tau_over_n, double epsilon_guard);

}  // namespace hhlab
