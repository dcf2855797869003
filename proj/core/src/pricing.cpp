#include "mfp/pricing.hpp"

#include "mfp/kdtree.hpp"
#include "mfp/stencils.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace mfp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> initial_values(const ScaledProblem& problem, const NodeLayout& layout) {
    std::vector<double> u(layout.size());
    for (std::size_t j = 0; j < layout.size(); ++j) u[j] = problem.payoff(layout.nodes[j]);
    return u;
}

void impose_dirichlet(const ScaledProblem& problem, const NodeLayout& layout, double tau, std::span<double> v) {
    for (std::size_t j = 0; j < layout.size(); ++j) {
        if (!is_dirichlet(layout.roles[j])) continue;
        v[j] = *problem.boundary(layout.nodes[j], layout.roles[j], tau);
    }
}

void check_layout(const ScaledProblem& problem, const NodeLayout& layout, const SparseMatrix& L) {
    if (layout.roles.size() != layout.size()) throw std::invalid_argument("pricing: layout roles size mismatch");
    if (L.rows() != layout.size() || L.cols() != layout.size()) {
        throw std::invalid_argument("pricing: operator size does not match layout");
    }
    if (layout.domain.kind() != problem.spec.domain.kind()) {
        throw std::invalid_argument("pricing: layout domain does not match problem");
    }
}

struct Marcher {
    const ScaledProblem& problem;
    const NodeLayout& layout;
    PricingResult result;
    SparseMatrix C;
    std::optional<Ilu0> ilu;
    PricingOptions options;

    Marcher(const ScaledProblem& p, const NodeLayout& l, const SparseMatrix& L, const PricingOptions& o)
        : problem(p), layout(l), options(o) {
        check_layout(p, l, L);
        result.grid = build_time_grid(p.spec.maturity(), o.steps);
        C = step_matrix(L, result.grid.beta0, l.roles);
        ilu.emplace(C);
        result.factorizations = 1;
    }

    /// Solves C x = rhs for step l, x warm-started from `guess`.
    void solve(std::size_t l, std::span<const double> rhs, std::span<const double> guess, std::span<double> x) {
        if (options.warm_start) {
            std::copy(guess.begin(), guess.end(), x.begin());
        } else {
            std::fill(x.begin(), x.end(), 0.0);
        }
        GmresResult r;
        try {
            r = gmres(C, *ilu, rhs, x, options.gmres);
        } catch (const SolverError& e) {
            throw SolverError("time step " + std::to_string(l + 1) + ": " + e.what(), e.residual_history);
        }
        result.log.push_back({l + 1, result.grid.elapsed(l + 1), r.iterations, r.relative_residual});
    }

    void finish(std::span<const double> u) {
        result.u.assign(u.begin(), u.end());
        const auto values = evaluate_at(layout, result.u, problem.eval_points);
        result.eval_values.resize(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) result.eval_values[i] = problem.to_price(values[i]);
    }
};

}  // namespace

DiscreteOperator discretize(const ScaledProblem& problem, const NodeLayout& layout, const PricingOptions& options) {
    DiscreteOperator out;
    const auto t0 = Clock::now();
    const auto stencils = make_stencils(layout, options.stencil_size);
    AssemblyOptions ao;
    ao.phs = options.phs;
    ao.poly = options.poly;
    ao.threads = options.threads;
    const auto weights = compute_weights(layout, stencils, problem.coeffs, ao);
    out.t_weights = seconds_since(t0);
    const auto t1 = Clock::now();
    out.L = assemble_weights(layout, stencils, weights, &out.stats);
    out.t_assemble = seconds_since(t1);
    return out;
}

SparseMatrix step_matrix(const SparseMatrix& L, double beta0, std::span<const NodeRole> roles) {
    if (L.rows() != L.cols() || roles.size() != L.rows()) throw std::invalid_argument("step_matrix: size mismatch");
    std::vector<Triplet> t;
    t.reserve(L.nnz() + L.rows());
    const auto rp = L.row_ptr();
    const auto ci = L.col_idx();
    const auto va = L.values();
    for (std::size_t i = 0; i < L.rows(); ++i) {
        t.push_back({i, i, 1.0});
        if (is_dirichlet(roles[i])) continue;
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) t.push_back({i, ci[k], -beta0 * va[k]});
    }
    return SparseMatrix::from_triplets(L.rows(), L.cols(), std::move(t));
}

PricingResult price_european(const ScaledProblem& problem, const NodeLayout& layout, const SparseMatrix& L,
                             const PricingOptions& options) {
    const auto t0 = Clock::now();
    Marcher m(problem, layout, L, options);
    const TimeGrid& g = m.result.grid;
    const std::size_t N = layout.size();

    std::vector<double> u = initial_values(problem, layout);
    std::vector<double> u_prev2 = u;
    std::vector<double> rhs(N), next(N);
    for (std::size_t l = 0; l < g.steps(); ++l) {
        for (std::size_t j = 0; j < N; ++j) rhs[j] = g.beta1[l] * u[j] - g.beta2[l] * u_prev2[j];
        impose_dirichlet(problem, layout, g.elapsed(l + 1), rhs);
        m.solve(l, rhs, u, next);
        u_prev2.swap(u);
        u.swap(next);
    }
    m.finish(u);
    m.result.t_step = seconds_since(t0);
    return std::move(m.result);
}

PricingResult price_american(const ScaledProblem& problem, const NodeLayout& layout, const SparseMatrix& L,
                             const PricingOptions& options) {
    if (problem.spec.kind != ProblemKind::basket_american_put) {
        throw std::invalid_argument("price_american: problem has no early exercise");
    }
    const auto t0 = Clock::now();
    Marcher m(problem, layout, L, options);
    const TimeGrid& g = m.result.grid;
    const std::size_t N = layout.size();
    const double b0 = g.beta0;

    const std::vector<double> obstacle = initial_values(problem, layout);
    std::vector<double> u = obstacle;
    std::vector<double> u_prev2 = u;
    std::vector<double> lambda(N, 0.0);
    std::vector<double> rhs(N), tilde(N);
    double max_product = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < g.steps(); ++l) {
        for (std::size_t j = 0; j < N; ++j) rhs[j] = g.beta1[l] * u[j] - g.beta2[l] * u_prev2[j] + b0 * lambda[j];
        impose_dirichlet(problem, layout, g.elapsed(l + 1), rhs);
        m.solve(l, rhs, u, tilde);
        u_prev2.swap(u);
        for (std::size_t j = 0; j < N; ++j) {
            if (is_dirichlet(layout.roles[j])) {
                u[j] = tilde[j];
                lambda[j] = 0.0;
            } else {
                const double lam_old = lambda[j];
                u[j] = std::max(tilde[j] - b0 * lam_old, obstacle[j]);
                lambda[j] = std::max(0.0, lam_old + (obstacle[j] - tilde[j]) / b0);
                // The two maxima are complementary in exact arithmetic; enforce
                // it in floating point as well.
                if (u[j] > obstacle[j]) lambda[j] = 0.0;
            }
            max_product = std::max(max_product, std::abs(lambda[j] * (u[j] - obstacle[j])));
            if (!is_dirichlet(layout.roles[j])) min_gap = std::min(min_gap, u[j] - obstacle[j]);
        }
    }
    m.result.lambda = lambda;
    m.result.max_complementarity = max_product;
    m.result.min_obstacle_gap = std::isfinite(min_gap) ? min_gap : 0.0;
    m.finish(u);
    m.result.t_step = seconds_since(t0);
    return std::move(m.result);
}

PricingResult price(const ScaledProblem& problem, const NodeLayout& layout, const SparseMatrix& L,
                    const PricingOptions& options) {
    if (problem.spec.kind == ProblemKind::basket_american_put) return price_american(problem, layout, L, options);
    return price_european(problem, layout, L, options);
}

std::vector<double> evaluate_at(const NodeLayout& layout, std::span<const double> u, std::span<const Point2> points) {
    if (u.size() != layout.size()) throw std::invalid_argument("evaluate_at: field size mismatch");
    std::vector<double> out;
    out.reserve(points.size());
    std::optional<KdTree> tree;
    for (const Point2& p : points) {
        if (!layout.domain.contains(p)) throw std::invalid_argument("evaluate_at: point outside the domain");
        if (!tree) tree.emplace(layout.nodes);
        const std::size_t k = tree->nearest(p).index;
        if (distance(layout.nodes[k], p) <= 1e-14) {
            out.push_back(u[k]);
            continue;
        }
        if (!layout.grid) throw std::invalid_argument("evaluate_at: no node at point and layout is unstructured");
        out.push_back(grid_cubic_interpolate(*layout.grid, u, p));
    }
    return out;
}

void write_solution(std::ostream& os, const NodeLayout& layout, std::span<const double> u) {
    if (u.size() != layout.size()) throw std::invalid_argument("write_solution: field size mismatch");
    char buf[96];
    for (std::size_t j = 0; j < layout.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", layout.nodes[j].x, layout.nodes[j].y, u[j]);
        os << buf;
    }
}

void write_step_log(std::ostream& os, std::span<const StepRecord> log) {
    os << "step,tau,iterations,residual\n";
    char buf[96];
    for (const StepRecord& r : log) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%zu,%.17g\n", r.step, r.tau, r.iterations, r.residual);
        os << buf;
    }
}

}  // namespace mfp
