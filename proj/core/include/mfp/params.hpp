#pragma once

#include <array>

namespace mfp {

/// Two-asset Black-Scholes-Merton basket.
struct BasketParams {
    double r = 0.03;
    std::array<double, 2> sigma{0.15, 0.15};
    std::array<std::array<double, 2>, 2> rho{{{1.0, 0.5}, {0.5, 1.0}}};
    double K = 100.0;
    double T = 1.0;

    void validate() const;
};

struct HestonParams {
    double r = 0.03;
    double kappa = 2.0;
    double eta = 0.0225;
    double sigma = 0.25;
    double rho = -0.5;
    double K = 100.0;
    double T = 1.0;

    void validate() const;
};

}  // namespace mfp
