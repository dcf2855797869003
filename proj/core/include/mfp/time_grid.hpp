#pragma once

#include <cstddef>
#include <vector>

namespace mfp {

/// Backward time steps with a BDF1 start and BDF2 afterwards, chosen so the
/// implicit coefficient beta0 is identical at every step. Step l (0-based)
/// advances time to maturity from elapsed(l) to elapsed(l) + tau[l] and solves
///
///     (E - beta0 L) u^{l+1} = beta1[l] u^l - beta2[l] u^{l-1}.
struct TimeGrid {
    double maturity = 0.0;
    double beta0 = 0.0;
    std::vector<double> tau;
    std::vector<double> beta1;
    std::vector<double> beta2;

    std::size_t steps() const noexcept { return tau.size(); }
    /// Time to maturity reached after `step_count` steps.
    double elapsed(std::size_t step_count) const noexcept;
};

/// Constant-beta0 grid over [0, T] with M >= 2 steps. tau[0] = beta0 (BDF1)
/// and, for l >= 1, tau[l] is the positive root of
/// t^2 + (tau[l-1] - 2 beta0) t - beta0 tau[l-1] = 0. beta0 is found by
/// bisection so the steps sum to T.
TimeGrid build_time_grid(double T, std::size_t M);

/// BDF2 weights (beta0, beta1, beta2) for step ratio omega = tau_l / tau_{l-1}.
struct Bdf2Weights {
    double beta0;
    double beta1;
    double beta2;
};
Bdf2Weights bdf2_weights(double tau, double omega) noexcept;

}  // namespace mfp
