#pragma once

#include "mfp/models.hpp"
#include "mfp/nodegen.hpp"
#include "mfp/oracles.hpp"
#include "mfp/pricing.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mfp {

struct LayoutOptions {
    LayoutKind kind = LayoutKind::smooth;
    double H = 0.1;                      // sinh density parameter (adapted)
    int repel_iterations = 4;            // a
    std::size_t repel_neighbors = 32;    // b
    std::optional<RadiusParams> shape;   // smooth; defaults per problem when empty
    std::optional<std::size_t> nodes_per_axis;  // structured layouts; overrides the target count
};

/// Radius-function shape used for smooth layouts of a problem (N is left at 1).
RadiusParams default_shape(ProblemKind kind);

/// Layout of the requested family with approximately `target` nodes. Smooth
/// layouts pin the evaluation points; the density parameter is calibrated
/// from the hex-packing estimate and corrected once by the realized count.
NodeLayout build_layout(const ScaledProblem& problem, const LayoutOptions& options, std::size_t target);

/// Oracle prices at the problem's evaluation points.
std::vector<ReferencePrice> reference_prices(const ProblemSpec& spec, const AmericanFdOptions& fd = {});

struct ExperimentOptions {
    LayoutOptions layout;
    PricingOptions pricing;
    bool estimate_condition = true;
};

struct ExperimentResult {
    std::size_t N = 0;
    NodeLayout layout;
    PricingResult pricing;
    AssemblyStats stats;
    std::vector<double> values;      // currency, at evaluation points
    std::vector<double> references;  // currency, at evaluation points
    double du_max = 0.0;             // max absolute error over the evaluation points
    double t_layout = 0.0;
    double t_weights = 0.0;
    double t_assemble = 0.0;
    double t_step = 0.0;
    double t_total = 0.0;            // weights + assembly + time stepping
    double cond1 = 0.0;              // 1-norm condition estimate of C
};

ExperimentResult run_experiment(const ScaledProblem& problem, const ExperimentOptions& options, std::size_t target,
                                std::span<const double> references);

/// Least-squares slope of log(du_max) against log(sqrt(N)).
double convergence_slope(std::span<const std::size_t> N, std::span<const double> errors);

}  // namespace mfp
