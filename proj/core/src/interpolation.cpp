#include "mfp/pricing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace mfp {

namespace {

// Lagrange weights on the nodes 0..3 at t.
std::array<double, 4> cubic_weights(double t) {
    return {-(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0, t * (t - 2.0) * (t - 3.0) / 2.0,
            -t * (t - 1.0) * (t - 3.0) / 2.0, t * (t - 1.0) * (t - 2.0) / 6.0};
}

std::ptrdiff_t patch_start(double index, std::ptrdiff_t count) {
    auto i0 = static_cast<std::ptrdiff_t>(std::floor(index)) - 1;
    return std::clamp<std::ptrdiff_t>(i0, 0, count - 4);
}

}  // namespace

double grid_cubic_interpolate(const GridParameterization& grid, std::span<const double> u, Point2 p) {
    const Point2 idx = grid.index_of(p);
    const auto rows = static_cast<std::ptrdiff_t>(grid.kind == DomainKind::triangle ? grid.diag.count : grid.xaxis.count);
    const auto cols = static_cast<std::ptrdiff_t>(grid.stride());
    if (rows < 4 || cols < 4) throw std::invalid_argument("grid_cubic_interpolate: grid has fewer than 4 nodes per axis");
    if (!std::isfinite(idx.x) || !std::isfinite(idx.y)) throw std::invalid_argument("grid_cubic_interpolate: bad point");

    const std::ptrdiff_t i0 = patch_start(idx.x, rows);
    const std::ptrdiff_t j0 = patch_start(idx.y, cols);
    const double ti = idx.x - static_cast<double>(i0);
    const double tj = idx.y - static_cast<double>(j0);
    if (ti < -1e-12 || ti > 3.0 + 1e-12 || tj < -1e-12 || tj > 3.0 + 1e-12) {
        throw std::invalid_argument("grid_cubic_interpolate: point outside its 4x4 patch");
    }
    const auto wi = cubic_weights(ti);
    const auto wj = cubic_weights(tj);
    double sum = 0.0;
    for (std::ptrdiff_t a = 0; a < 4; ++a) {
        double row = 0.0;
        for (std::ptrdiff_t b = 0; b < 4; ++b) {
            const std::ptrdiff_t k = grid.node(i0 + a, j0 + b);
            if (k < 0) throw std::invalid_argument("grid_cubic_interpolate: 4x4 patch leaves the grid");
            row += wj[static_cast<std::size_t>(b)] * u[static_cast<std::size_t>(k)];
        }
        sum += wi[static_cast<std::size_t>(a)] * row;
    }
    return sum;
}

}  // namespace mfp
