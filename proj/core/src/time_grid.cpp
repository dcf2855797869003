#include "mfp/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace mfp {

namespace {

// Positive root of t^2 + (prev - 2 b) t - b prev = 0, evaluated without cancellation.
double next_step(double prev, double b) {
    const double p = prev - 2.0 * b;
    const double c = -b * prev;
    const double disc = std::sqrt(p * p - 4.0 * c);
    return p <= 0.0 ? 0.5 * (-p + disc) : (2.0 * -c) / (p + disc);
}

double total_length(double b, std::size_t M) {
    double prev = b;
    double sum = b;
    for (std::size_t l = 1; l < M; ++l) {
        prev = next_step(prev, b);
        sum += prev;
    }
    return sum;
}

}  // namespace

Bdf2Weights bdf2_weights(double tau, double omega) noexcept {
    const double d = 1.0 + 2.0 * omega;
    return {tau * (1.0 + omega) / d, (1.0 + omega) * (1.0 + omega) / d, omega * omega / d};
}

double TimeGrid::elapsed(std::size_t step_count) const noexcept {
    double t = 0.0;
    for (std::size_t l = 0; l < step_count && l < tau.size(); ++l) t += tau[l];
    return t;
}

TimeGrid build_time_grid(double T, std::size_t M) {
    if (M < 2) throw std::invalid_argument("build_time_grid: need at least 2 steps");
    if (!(T > 0.0)) throw std::invalid_argument("build_time_grid: maturity must be positive");

    // The total grows monotonically with beta0 and every step lies in
    // [beta0, 1.62 beta0], so T / (2M) <= beta0 <= T brackets the root.
    double lo = T / (2.0 * static_cast<double>(M));
    double hi = T;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (total_length(mid, M) < T ? lo : hi) = mid;
    }
    const double b = std::abs(total_length(lo, M) - T) <= std::abs(total_length(hi, M) - T) ? lo : hi;

    TimeGrid grid;
    grid.maturity = T;
    grid.beta0 = b;
    grid.tau.resize(M);
    grid.beta1.resize(M);
    grid.beta2.resize(M);
    grid.tau[0] = b;
    grid.beta1[0] = 1.0;
    grid.beta2[0] = 0.0;
    for (std::size_t l = 1; l < M; ++l) {
        grid.tau[l] = next_step(grid.tau[l - 1], b);
        const Bdf2Weights w = bdf2_weights(grid.tau[l], grid.tau[l] / grid.tau[l - 1]);
        grid.beta1[l] = w.beta1;
        grid.beta2[l] = w.beta2;
    }
    return grid;
}

}  // namespace mfp
