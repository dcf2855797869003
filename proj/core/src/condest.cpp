#include "mfp/linsolve.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace mfp {

namespace {

constexpr Eigen::Index kBlock = 4;
constexpr int kMaxIterations = 5;

Eigen::VectorXd signs(const Eigen::VectorXd& y) {
    return y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
}

bool parallel_to_any(const Eigen::VectorXd& s, const Eigen::MatrixXd& m, Eigen::Index cols) {
    const double n = static_cast<double>(s.size());
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (std::abs(s.dot(m.col(j))) == n) return true;
    }
    return false;
}

}  // namespace

double condition_estimate_1norm(const SparseMatrix& a) {
    const auto n = static_cast<Eigen::Index>(a.rows());
    if (a.rows() != a.cols() || n == 0) throw std::invalid_argument("condition_estimate_1norm: square matrix required");

    std::vector<Eigen::Triplet<double>> t;
    t.reserve(a.nnz());
    for (const Triplet& e : a.triplets()) {
        t.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success) throw std::runtime_error("condition_estimate_1norm: singular matrix");

    // Block power iteration on ||A^{-1}||_1 (Higham-Tisseur). The random sign
    // columns use a fixed seed so repeated runs agree bitwise.
    const Eigen::Index cols = std::min(kBlock, n);
    std::mt19937_64 rng(20190101);
    std::bernoulli_distribution coin(0.5);
    auto random_signs = [&] {
        Eigen::VectorXd s(n);
        for (Eigen::Index i = 0; i < n; ++i) s(i) = coin(rng) ? 1.0 : -1.0;
        return s;
    };

    Eigen::MatrixXd X(n, cols);
    X.col(0).setOnes();
    for (Eigen::Index j = 1; j < cols; ++j) {
        Eigen::VectorXd s = random_signs();
        for (int tries = 0; tries < 20 && parallel_to_any(s, X, j); ++tries) s = random_signs();
        X.col(j) = s;
    }
    X /= static_cast<double>(n);

    std::vector<char> used(static_cast<std::size_t>(n), 0);
    Eigen::MatrixXd S_old = Eigen::MatrixXd::Zero(n, cols);
    Eigen::MatrixXd Y(n, cols), S(n, cols), Z(n, cols);
    double estimate = 0.0;
    Eigen::Index best = -1;
    for (int k = 0; k < kMaxIterations; ++k) {
        for (Eigen::Index j = 0; j < cols; ++j) Y.col(j) = lu.solve(Eigen::VectorXd(X.col(j)));
        double est = 0.0;
        for (Eigen::Index j = 0; j < cols; ++j) est = std::max(est, Y.col(j).lpNorm<1>());
        if (k > 0 && est <= estimate) break;
        estimate = est;

        bool all_parallel = true;
        for (Eigen::Index j = 0; j < cols; ++j) {
            Eigen::VectorXd s = signs(Y.col(j));
            if (!parallel_to_any(s, S_old, cols)) all_parallel = false;
            if (j > 0) {
                for (int tries = 0; tries < 20 && (parallel_to_any(s, S, j) || parallel_to_any(s, S_old, cols)); ++tries) {
                    s = random_signs();
                }
            }
            S.col(j) = s;
        }
        if (k > 0 && all_parallel) break;
        S_old = S;

        for (Eigen::Index j = 0; j < cols; ++j) Z.col(j) = lu.transpose().solve(Eigen::VectorXd(S.col(j)));
        Eigen::VectorXd h = Z.cwiseAbs().rowwise().maxCoeff();
        Eigen::Index hmax_at = 0;
        h.maxCoeff(&hmax_at);
        if (k > 0 && hmax_at == best) break;

        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index p, Eigen::Index q) { return h(p) > h(q); });
        bool all_used = true;
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (!used[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])]) all_used = false;
        }
        if (all_used) break;
        best = order[0];
        X.setZero();
        Eigen::Index placed = 0;
        for (Eigen::Index i : order) {
            if (placed == cols) break;
            if (used[static_cast<std::size_t>(i)]) continue;
            used[static_cast<std::size_t>(i)] = 1;
            X(i, placed++) = 1.0;
        }
    }

    // Alternating test vector guards against the estimator's known blind spots.
    Eigen::VectorXd alt(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        alt(i) = sign * (1.0 + (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0));
    }
    const double alt_estimate = 2.0 * lu.solve(alt).lpNorm<1>() / (3.0 * static_cast<double>(n));
    estimate = std::max(estimate, alt_estimate);
    if (!std::isfinite(estimate)) throw std::runtime_error("condition_estimate_1norm: singular matrix");
    return a.norm1() * estimate;
}

}  // namespace mfp
