#include "mfp/rbffd.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace mfp {

StencilWeights stencil_weights(const Stencil& stencil, std::span<const Point2> points,
                               const OperatorCoeffs& coeffs, const PhsBasis& phs, const PolySpace& poly,
                               const WeightOptions& options) {
    const auto n = static_cast<Eigen::Index>(stencil.members.size());
    if (n == 0) throw StencilError(stencil.center, "empty stencil");
    if (!(stencil.scale > 0.0)) throw StencilError(stencil.center, "non-positive stencil scale");

    // Stencil-local frame: center at the origin, unit radius.
    const double inv_scale = 1.0 / stencil.scale;
    std::vector<Point2> local(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        local[static_cast<std::size_t>(i)] = inv_scale * (points[stencil.members[static_cast<std::size_t>(i)]] - stencil.shift);
    }
    const OperatorCoeffs lc = coeffs.rescaled(stencil.scale);
    const Point2 origin{0.0, 0.0};

    const auto m_full = static_cast<Eigen::Index>(poly.size());
    Eigen::MatrixXd P(n, m_full);
    Eigen::VectorXd Lp(m_full);
    for (Eigen::Index k = 0; k < m_full; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) P(i, k) = poly.value(static_cast<std::size_t>(k), local[static_cast<std::size_t>(i)]);
        Lp(k) = poly.apply(static_cast<std::size_t>(k), origin, lc);
    }

    // Monomials that are linearly dependent on the stencil (e.g. xy on a
    // five-point cross) are dropped when their constraint is implied by the
    // others; otherwise the stencil is not unisolvent.
    std::vector<Eigen::Index> keep;
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(P);
        qr.setThreshold(1e-10);
        const Eigen::Index rank = qr.rank();
        for (Eigen::Index k = 0; k < rank; ++k) keep.push_back(qr.colsPermutation().indices()(k));
        std::sort(keep.begin(), keep.end());
        if (rank < m_full) {
            Eigen::MatrixXd Ps(n, rank);
            Eigen::VectorXd Lps(rank);
            for (Eigen::Index k = 0; k < rank; ++k) {
                Ps.col(k) = P.col(keep[static_cast<std::size_t>(k)]);
                Lps(k) = Lp(keep[static_cast<std::size_t>(k)]);
            }
            const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Ps);
            for (Eigen::Index k = 0; k < m_full; ++k) {
                if (std::binary_search(keep.begin(), keep.end(), k)) continue;
                const Eigen::VectorXd c = cod.solve(P.col(k));
                const double fit = (Ps * c - P.col(k)).norm();
                const double implied = c.dot(Lps);
                if (fit > 1e-10 * (1.0 + P.col(k).norm()) ||
                    std::abs(implied - Lp(k)) > 1e-10 * (1.0 + std::abs(Lp(k)) + std::abs(implied))) {
                    throw StencilError(stencil.center, "stencil of " + std::to_string(n) +
                                                           " nodes is not unisolvent for the polynomial space");
                }
            }
        }
    }
    const auto m = static_cast<Eigen::Index>(keep.size());

    const Eigen::Index dim = n + m;
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs(dim);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Point2 xi = local[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = phs.value(distance(xi, local[static_cast<std::size_t>(j)]));
            sys(i, j) = v;
            sys(j, i) = v;
        }
        for (Eigen::Index k = 0; k < m; ++k) {
            const double pk = P(i, keep[static_cast<std::size_t>(k)]);
            sys(n + k, i) = pk;
            sys(i, n + k) = pk;
        }
        rhs(i) = phs.apply(origin, xi, lc);
    }
    for (Eigen::Index k = 0; k < m; ++k) rhs(n + k) = Lp(keep[static_cast<std::size_t>(k)]);

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys);
    StencilWeights out;
    const double rcond = lu.rcond();
    out.condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(out.condition <= options.max_condition)) {
        throw StencilError(stencil.center, "saddle matrix condition estimate " + std::to_string(out.condition) +
                                               " exceeds threshold");
    }
    Eigen::VectorXd sol = lu.solve(rhs);
    Eigen::VectorXd res = rhs - sys * sol;
    sol += lu.solve(res);  // one step of iterative refinement
    res = rhs - sys * sol;

    const double scale = sys.cwiseAbs().rowwise().sum().maxCoeff() * sol.lpNorm<Eigen::Infinity>() +
                         rhs.lpNorm<Eigen::Infinity>();
    out.residual = scale > 0.0 ? res.lpNorm<Eigen::Infinity>() / scale : 0.0;
    if (!std::isfinite(out.residual) || out.residual > options.max_residual) {
        throw StencilError(stencil.center, "saddle system residual " + std::to_string(out.residual) + " too large");
    }
    out.weights.assign(sol.data(), sol.data() + n);
    return out;
}

std::vector<StencilWeights> compute_weights(const NodeLayout& layout, std::span<const Stencil> stencils,
                                            const CoeffField& coeffs, const AssemblyOptions& options) {
    const std::size_t count = stencils.size();
    std::vector<StencilWeights> results(count);

    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, count)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::size_t failed_at = count;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t s = next.fetch_add(1);
            if (s >= count) return;
            try {
                const Stencil& st = stencils[s];
                results[s] = stencil_weights(st, layout.nodes, coeffs(layout.nodes[st.center]), options.phs,
                                             options.poly, options.weights);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                // Report the lowest failing stencil so the error is schedule independent.
                if (s < failed_at) {
                    failed_at = s;
                    failure = std::current_exception();
                }
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

SparseMatrix assemble_weights(const NodeLayout& layout, std::span<const Stencil> stencils,
                              std::span<const StencilWeights> weights, AssemblyStats* stats) {
    if (weights.size() != stencils.size()) throw std::invalid_argument("assemble_weights: size mismatch");
    std::vector<Triplet> triplets;
    std::size_t total = 0;
    for (const Stencil& st : stencils) total += st.members.size();
    triplets.reserve(total);
    AssemblyStats local_stats;
    for (std::size_t s = 0; s < stencils.size(); ++s) {
        const Stencil& st = stencils[s];
        for (std::size_t i = 0; i < st.members.size(); ++i) {
            triplets.push_back({st.center, st.members[i], weights[s].weights[i]});
        }
        local_stats.max_condition = std::max(local_stats.max_condition, weights[s].condition);
        local_stats.max_residual = std::max(local_stats.max_residual, weights[s].residual);
    }
    if (stats) *stats = local_stats;
    return SparseMatrix::from_triplets(layout.size(), layout.size(), std::move(triplets));
}

SparseMatrix assemble(const NodeLayout& layout, std::span<const Stencil> stencils, const CoeffField& coeffs,
                      const AssemblyOptions& options, AssemblyStats* stats) {
    const auto weights = compute_weights(layout, stencils, coeffs, options);
    return assemble_weights(layout, stencils, weights, stats);
}

}  // namespace mfp
