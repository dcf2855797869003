#pragma once

#include "mfp/linsolve.hpp"
#include "mfp/models.hpp"
#include "mfp/nodegen.hpp"
#include "mfp/rbffd.hpp"
#include "mfp/sparse.hpp"
#include "mfp/time_grid.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace mfp {

struct PricingOptions {
    PhsBasis phs{5};
    PolySpace poly{4};
    std::size_t stencil_size = 75;
    std::size_t steps = 100;
    GmresOptions gmres{};
    bool warm_start = true;
    unsigned threads = 0;
};

/// Differentiation matrix of a problem on a layout, with wall-clock split.
struct DiscreteOperator {
    SparseMatrix L;
    AssemblyStats stats;
    double t_weights = 0.0;   // stencil search and weight solves
    double t_assemble = 0.0;  // sparse matrix formation
};

DiscreteOperator discretize(const ScaledProblem& problem, const NodeLayout& layout, const PricingOptions& options);

/// C = E - beta0 L, with unit rows on Dirichlet nodes.
SparseMatrix step_matrix(const SparseMatrix& L, double beta0, std::span<const NodeRole> roles);

struct StepRecord {
    std::size_t step = 0;
    double tau = 0.0;  // time to maturity after the step
    std::size_t iterations = 0;
    double residual = 0.0;
};

struct PricingResult {
    std::vector<double> u;            // scaled values at the nodes, time to maturity T
    std::vector<double> lambda;       // early-exercise multipliers (American only)
    std::vector<double> eval_values;  // currency, at the problem's evaluation points
    TimeGrid grid;
    std::vector<StepRecord> log;
    std::size_t factorizations = 0;
    double t_step = 0.0;
    /// max_j |lambda_j (u_j - g_j)| over all steps (American only; zero by construction).
    double max_complementarity = 0.0;
    /// min_j (u_j - g_j) over all steps (American only).
    double min_obstacle_gap = 0.0;
};

/// Marches u from the payoff over options.steps constant-beta0 steps.
PricingResult price_european(const ScaledProblem& problem, const NodeLayout& layout, const SparseMatrix& L,
                             const PricingOptions& options);

/// Operator-splitting LCP march for early exercise.
PricingResult price_american(const ScaledProblem& problem, const NodeLayout& layout, const SparseMatrix& L,
                             const PricingOptions& options);

/// Dispatches on the problem kind.
PricingResult price(const ScaledProblem& problem, const NodeLayout& layout, const SparseMatrix& L,
                    const PricingOptions& options);

/// Values of a nodal field at scaled points: exact node reads where a node
/// sits on the point, otherwise tensor-product cubic interpolation over the
/// 4x4 surrounding nodes of a structured layout.
std::vector<double> evaluate_at(const NodeLayout& layout, std::span<const double> u, std::span<const Point2> points);

/// Cubic interpolation in the index space of a structured layout.
double grid_cubic_interpolate(const GridParameterization& grid, std::span<const double> u, Point2 p);

/// `x y u` per node.
void write_solution(std::ostream& os, const NodeLayout& layout, std::span<const double> u);
/// CSV `step,tau,iterations,residual`.
void write_step_log(std::ostream& os, std::span<const StepRecord> log);

}  // namespace mfp
