#include "mfp/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mfp {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

GmresResult gmres(const SparseMatrix& a, const Ilu0& preconditioner, std::span<const double> b,
                  std::span<double> x, const GmresOptions& options) {
    const std::size_t n = a.rows();
    if (b.size() != n || x.size() != n || preconditioner.size() != n) {
        throw std::invalid_argument("gmres: size mismatch");
    }
    GmresResult result;
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return result;
    }

    const std::size_t m = std::max<std::size_t>(1, options.restart);
    std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
    std::vector<std::vector<double>> h(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m), sn(m), g(m + 1), y(m), r(n), w(n), z(n);

    auto residual = [&]() {
        a.multiply(x, r);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        return norm2(r);
    };

    double rnorm = residual();
    result.relative_residual = rnorm / bnorm;
    while (result.relative_residual > options.tolerance) {
        if (result.iterations >= options.max_iterations) {
            std::ostringstream msg;
            msg << "gmres: no convergence after " << result.iterations
                << " iterations, relative residual " << result.relative_residual;
            throw SolverError(msg.str(), result.residual_history);
        }
        for (std::size_t i = 0; i < n; ++i) v[0][i] = r[i] / rnorm;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = rnorm;

        std::size_t k = 0;
        for (; k < m && result.iterations < options.max_iterations; ++k) {
            preconditioner.apply(v[k], z);
            a.multiply(z, w);
            for (std::size_t j = 0; j <= k; ++j) {
                h[j][k] = dot(w, v[j]);
                for (std::size_t i = 0; i < n; ++i) w[i] -= h[j][k] * v[j][i];
            }
            h[k + 1][k] = norm2(w);
            if (h[k + 1][k] > 0.0) {
                for (std::size_t i = 0; i < n; ++i) v[k + 1][i] = w[i] / h[k + 1][k];
            }
            for (std::size_t j = 0; j < k; ++j) {
                const double t = cs[j] * h[j][k] + sn[j] * h[j + 1][k];
                h[j + 1][k] = -sn[j] * h[j][k] + cs[j] * h[j + 1][k];
                h[j][k] = t;
            }
            const double denom = std::hypot(h[k][k], h[k + 1][k]);
            cs[k] = h[k][k] / denom;
            sn[k] = h[k + 1][k] / denom;
            h[k][k] = denom;
            h[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];

            ++result.iterations;
            const double estimate = std::abs(g[k + 1]) / bnorm;
            result.residual_history.push_back(estimate);
            if (estimate <= options.tolerance || h[k][k] == 0.0) {
                ++k;
                break;
            }
        }

        // Back substitution for the k x k upper-triangular least-squares system.
        for (std::size_t i = k; i-- > 0;) {
            double s = g[i];
            for (std::size_t j = i + 1; j < k; ++j) s -= h[i][j] * y[j];
            y[i] = s / h[i][i];
        }
        std::fill(w.begin(), w.end(), 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < n; ++i) w[i] += y[j] * v[j][i];
        }
        preconditioner.apply(w, z);
        for (std::size_t i = 0; i < n; ++i) x[i] += z[i];

        rnorm = residual();
        result.relative_residual = rnorm / bnorm;
        if (!result.residual_history.empty()) result.residual_history.back() = result.relative_residual;
    }
    return result;
}

}  // namespace mfp
