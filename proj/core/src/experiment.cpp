#include "mfp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mfp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

RadiusParams default_shape(ProblemKind kind) {
    RadiusParams p;
    p.N = 1.0;
    if (kind == ProblemKind::heston_european_call) {
        p.X1 = 0.25;
        p.X2 = 0.5 * 0.0225 / 0.25;  // v = 0.0225 on the scaled axis v / 0.5
        p.P = 0.75;
        p.Q = 0.25;
        p.G = 0.0;
    } else {
        p.X1 = 0.125;
        p.X2 = 0.125;
        p.P = 0.25;
        p.Q = 0.75;
        p.G = std::numbers::pi / 4.0;
    }
    return p;
}

NodeLayout build_layout(const ScaledProblem& problem, const LayoutOptions& options, std::size_t target) {
    const bool fixed_grid = options.nodes_per_axis && options.kind != LayoutKind::smooth;
    if (target < 4 && !fixed_grid) throw std::invalid_argument("build_layout: target node count too small");
    const Domain2D& domain = problem.spec.domain;
    const auto t = static_cast<double>(target);
    std::size_t per_axis = 0;
    if (domain.kind() == DomainKind::triangle) {
        per_axis = static_cast<std::size_t>(std::lround((std::sqrt(8.0 * t + 1.0) - 1.0) / 2.0));
    } else {
        per_axis = static_cast<std::size_t>(std::lround(std::sqrt(t)));
    }
    if (options.nodes_per_axis) per_axis = *options.nodes_per_axis;
    switch (options.kind) {
        case LayoutKind::cartesian: return cartesian_layout(domain, per_axis);
        case LayoutKind::adapted: return adapted_layout(domain, per_axis, options.H, problem.strike_hat);
        case LayoutKind::smooth: break;
    }
    RadiusParams params = options.shape ? *options.shape : default_shape(problem.spec.kind);
    params.N = density_for_count(domain, params, t);
    NodeLayout layout = make_smooth_layout(domain, problem.eval_points, params, options.repel_iterations,
                                           options.repel_neighbors);
    params.N *= t / static_cast<double>(layout.size());
    return make_smooth_layout(domain, problem.eval_points, params, options.repel_iterations, options.repel_neighbors);
}

std::vector<ReferencePrice> reference_prices(const ProblemSpec& spec, const AmericanFdOptions& fd) {
    std::vector<ReferencePrice> out;
    switch (spec.kind) {
        case ProblemKind::basket_european_call:
            for (const Point2& p : spec.eval_points) out.push_back(basket_call_reference(spec.basket, p));
            break;
        case ProblemKind::basket_american_put:
            out = american_put_reference(spec.basket, spec.eval_points, fd);
            break;
        case ProblemKind::heston_european_call:
            for (const Point2& p : spec.eval_points) out.push_back(heston_call_reference(spec.heston, p.x, p.y));
            break;
    }
    return out;
}

ExperimentResult run_experiment(const ScaledProblem& problem, const ExperimentOptions& options, std::size_t target,
                                std::span<const double> references) {
    if (references.size() != problem.eval_points.size()) {
        throw std::invalid_argument("run_experiment: one reference per evaluation point required");
    }
    ExperimentResult r;
    auto t0 = Clock::now();
    r.layout = build_layout(problem, options.layout, target);
    r.t_layout = seconds_since(t0);
    r.N = r.layout.size();

    DiscreteOperator op = discretize(problem, r.layout, options.pricing);
    r.stats = op.stats;
    r.t_weights = op.t_weights;
    r.t_assemble = op.t_assemble;
    r.pricing = price(problem, r.layout, op.L, options.pricing);
    r.t_step = r.pricing.t_step;
    r.t_total = r.t_weights + r.t_assemble + r.t_step;

    r.values = r.pricing.eval_values;
    r.references.assign(references.begin(), references.end());
    for (std::size_t k = 0; k < r.values.size(); ++k) {
        r.du_max = std::max(r.du_max, std::abs(r.values[k] - references[k]));
    }
    if (!std::all_of(r.values.begin(), r.values.end(), [](double v) { return std::isfinite(v); })) {
        r.du_max = std::numeric_limits<double>::infinity();
    }
    if (options.estimate_condition) {
        r.cond1 = condition_estimate_1norm(step_matrix(op.L, r.pricing.grid.beta0, r.layout.roles));
    }
    return r;
}

double convergence_slope(std::span<const std::size_t> N, std::span<const double> errors) {
    if (N.size() != errors.size()) throw std::invalid_argument("convergence_slope: size mismatch");
    if (N.size() < 2) throw std::invalid_argument("convergence_slope: need at least two points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(N.size());
    for (std::size_t k = 0; k < N.size(); ++k) {
        if (!(errors[k] > 0.0)) throw std::invalid_argument("convergence_slope: errors must be positive");
        const double x = std::log(std::sqrt(static_cast<double>(N[k])));
        const double y = std::log(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("convergence_slope: all N equal");
    // Error decreases as N grows; report the order as a positive number.
    return -(n * sxy - sx * sy) / denom;
}

}  // namespace mfp
