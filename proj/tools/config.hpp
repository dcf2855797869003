#pragma once

#include "mfp/experiment.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfp::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a command needs, with defaults taken from the experiments this
/// tool reproduces.
struct RunConfig {
    ProblemSpec problem;
    LayoutOptions layout;
    PricingOptions pricing;
    AmericanFdOptions oracle;
    std::vector<std::size_t> N{2000};
    bool estimate_condition = true;
};

/// INI-style text:
///
///     [run]       problem, layout, N (list), nodes_per_axis, condition
///     [rbf]       q, p, n
///     [time]      M
///     [solver]    tol, restart, max_iterations, warm_start, threads
///     [layout]    H, a, b, P, Q, G, X1, X2
///     [basket]    r, sigma1, sigma2, rho, K, T
///     [heston]    r, kappa, eta, sigma, rho, K, T, v_max
///     [oracle]    coarse_intervals, fine_intervals, coarse_steps, fine_steps, omega, tol
///
/// `run.problem` is required. Unknown sections or keys are errors.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace mfp::cli
