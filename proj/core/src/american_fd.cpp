#include "mfp/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mfp {

namespace {

// Uniform grid on s1 + s2 <= 8K with nodes (i, j), i + j <= n. Row i holds
// j = 0..n-i. Values outside the triangle are zero (far field of a put).
class TriangleGrid {
public:
    explicit TriangleGrid(std::size_t n) : n_(n), start_(n + 2) {
        start_[0] = 0;
        for (std::size_t i = 0; i <= n; ++i) start_[i + 1] = start_[i] + (n - i + 1);
    }
    std::size_t n() const noexcept { return n_; }
    std::size_t size() const noexcept { return start_[n_ + 1]; }
    std::size_t at(std::size_t i, std::size_t j) const noexcept { return start_[i] + j; }

private:
    std::size_t n_;
    std::vector<std::size_t> start_;
};

// Seven-point stencil of theta*dt*L at one node, in the order
// center, E, W, N, S, D1, D2 where D1/D2 are the diagonal pair used for the
// cross derivative (NE/SW for rho >= 0, SE/NW otherwise).
struct Row {
    double diag, e, w, n, s, d1, d2;
};

Row operator_row(const BasketParams& p, double i, double j, double scale) {
    const double a1 = 0.5 * p.sigma[0] * p.sigma[0] * i * i;
    const double a2 = 0.5 * p.sigma[1] * p.sigma[1] * j * j;
    const double c = p.rho[0][1] * p.sigma[0] * p.sigma[1] * i * j;  // times s1 s2 u_12 h^2
    const double b1 = 0.5 * p.r * i;
    const double b2 = 0.5 * p.r * j;
    const double hc = 0.5 * std::abs(c);
    Row row{};
    row.e = scale * (a1 - hc + b1);
    row.w = scale * (a1 - hc - b1);
    row.n = scale * (a2 - hc + b2);
    row.s = scale * (a2 - hc - b2);
    row.d1 = scale * hc;
    row.d2 = scale * hc;
    row.diag = scale * (-2.0 * a1 - 2.0 * a2 + 2.0 * hc - p.r);
    return row;
}

}  // namespace

std::vector<double> basket_put_fd(const BasketParams& params, std::span<const Point2> points, std::size_t intervals,
                                  std::size_t steps, const AmericanFdOptions& options) {
    params.validate();
    if (intervals < 4) throw std::invalid_argument("basket_put_fd: grid too coarse");
    if (steps < 1) throw std::invalid_argument("basket_put_fd: need at least one time step");
    const std::size_t n = intervals;
    const double L = 8.0 * params.K;
    const double h = L / static_cast<double>(n);
    const double dt = params.T / static_cast<double>(steps);
    const TriangleGrid grid(n);
    const bool pos = params.rho[0][1] >= 0.0;

    std::vector<std::size_t> point_nodes;
    for (const Point2& pt : points) {
        const double fi = pt.x / h, fj = pt.y / h;
        const double ri = std::round(fi), rj = std::round(fj);
        if (std::abs(fi - ri) > 1e-9 || std::abs(fj - rj) > 1e-9 || ri < 0 || rj < 0 || ri + rj > n) {
            throw std::invalid_argument("basket_put_fd: evaluation point is not a grid node");
        }
        point_nodes.push_back(grid.at(static_cast<std::size_t>(ri), static_cast<std::size_t>(rj)));
    }

    std::vector<double> g(grid.size());
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; i + j <= n; ++j) {
            g[grid.at(i, j)] = std::max(params.K - 0.5 * h * static_cast<double>(i + j), 0.0);
        }
    }
    std::vector<double> u = g, u_prev = g, rhs(grid.size());

    auto value = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> double {
        if (i < 0 || j < 0 || static_cast<std::size_t>(i + j) >= n) return 0.0;
        return u[grid.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
    };

    for (std::size_t step = 0; step < steps; ++step) {
        const double tau = dt * static_cast<double>(step + 1);
        // Implicit Euler for the first step, BDF2 afterwards.
        const bool bdf2 = step > 0;
        const double theta = bdf2 ? 2.0 / 3.0 : 1.0;
        for (std::size_t k = 0; k < grid.size(); ++k) rhs[k] = bdf2 ? (4.0 * u[k] - u_prev[k]) / 3.0 : u[k];
        u_prev = u;
        u[grid.at(0, 0)] = options.early_exercise ? params.K : params.K * std::exp(-params.r * tau);
        for (std::size_t i = 0; i <= n; ++i) u[grid.at(i, n - i)] = 0.0;

        std::size_t sweep = 0;
        for (;; ++sweep) {
            if (sweep >= options.max_sweeps) {
                throw OracleError("basket_put_fd: projected SOR stagnated", static_cast<double>(sweep), 0.0);
            }
            double change = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = (i == 0 ? 1 : 0); i + j < n; ++j) {
                    const auto ii = static_cast<std::ptrdiff_t>(i), jj = static_cast<std::ptrdiff_t>(j);
                    const Row r = operator_row(params, static_cast<double>(i), static_cast<double>(j), theta * dt);
                    double off = r.e * value(ii + 1, jj) + r.n * value(ii, jj + 1);
                    if (i > 0) off += r.w * value(ii - 1, jj);
                    if (j > 0) off += r.s * value(ii, jj - 1);
                    if (r.d1 != 0.0) {
                        if (pos) {
                            off += r.d1 * value(ii + 1, jj + 1) + r.d2 * value(ii - 1, jj - 1);
                        } else {
                            off += r.d1 * value(ii + 1, jj - 1) + r.d2 * value(ii - 1, jj + 1);
                        }
                    }
                    const std::size_t k = grid.at(i, j);
                    const double gs = (rhs[k] + off) / (1.0 - r.diag);
                    double next = u[k] + options.omega * (gs - u[k]);
                    if (options.early_exercise) next = std::max(next, g[k]);
                    change = std::max(change, std::abs(next - u[k]));
                    u[k] = next;
                }
            }
            if (change < options.tolerance) break;
        }
    }

    std::vector<double> out;
    out.reserve(point_nodes.size());
    for (std::size_t k : point_nodes) out.push_back(u[k]);
    return out;
}

std::vector<ReferencePrice> american_put_reference(const BasketParams& params, std::span<const Point2> points,
                                                   const AmericanFdOptions& options) {
    const auto coarse = basket_put_fd(params, points, options.coarse_intervals, options.coarse_steps, options);
    const auto fine = basket_put_fd(params, points, options.fine_intervals, options.fine_steps, options);
    std::vector<ReferencePrice> out;
    for (std::size_t k = 0; k < points.size(); ++k) {
        out.push_back({points[k], (4.0 * fine[k] - coarse[k]) / 3.0, std::abs(fine[k] - coarse[k]) / 3.0,
                       options.early_exercise ? "projected SOR finite differences Richardson"
                                              : "SOR finite differences Richardson"});
    }
    return out;
}

}  // namespace mfp
