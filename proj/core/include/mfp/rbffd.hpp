#pragma once

#include "mfp/geometry.hpp"
#include "mfp/nodegen.hpp"
#include "mfp/sparse.hpp"
#include "mfp/stencils.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfp {

/// Pointwise coefficients of  L u = sum_kl a_kl u_{x_k x_l} + sum_k b_k u_{x_k} + c u.
struct OperatorCoeffs {
    std::array<std::array<double, 2>, 2> a{};  // symmetric
    std::array<double, 2> b{};
    double c = 0.0;

    /// Coefficients of the same operator written in coordinates xi = (x - x0) / h.
    OperatorCoeffs rescaled(double h) const noexcept;
};

using CoeffField = std::function<OperatorCoeffs(Point2)>;

/// Polyharmonic spline phi(r) = r^q (odd q) or r^q log r (even q).
struct PhsBasis {
    int q = 5;

    explicit PhsBasis(int degree = 5);
    double value(double r) const noexcept;
    /// L phi(||x - node||) evaluated at x = center.
    double apply(Point2 center, Point2 node, const OperatorCoeffs& coeffs) const noexcept;
};

/// All monomials x^i y^j with i + j <= p, graded by total degree and then by
/// decreasing power of x: 1, x, y, x^2, xy, y^2, ...
struct PolySpace {
    int p = 4;

    explicit PolySpace(int degree = 4);
    std::size_t size() const noexcept { return static_cast<std::size_t>((p + 1) * (p + 2) / 2); }
    std::array<int, 2> exponents(std::size_t k) const noexcept;
    double value(std::size_t k, Point2 x) const noexcept;
    /// Exact L p_k at x.
    double apply(std::size_t k, Point2 x, const OperatorCoeffs& coeffs) const noexcept;
};

double phs_value(double r, int q);
double phs_operator_apply(Point2 center, Point2 node, const OperatorCoeffs& coeffs, int q);
std::vector<double> monomial_operator_apply(Point2 center, const OperatorCoeffs& coeffs, int p);

/// A stencil whose weight system could not be solved reliably.
class StencilError : public std::runtime_error {
public:
    StencilError(std::size_t node, const std::string& what)
        : std::runtime_error("stencil at node " + std::to_string(node) + ": " + what), node_(node) {}
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

struct WeightOptions {
    double max_condition = 1e14;
    double max_residual = 1e-10;
};

struct StencilWeights {
    std::vector<double> weights;  // aligned with Stencil::members
    double condition = 0.0;       // estimated 1-norm condition of the saddle matrix
    double residual = 0.0;        // normwise backward error of the saddle solve
};

/// Weights w with L u(center) ~ sum_i w_i u(member_i), from the PHS saddle
/// system [[A, P^T], [P, 0]] [w; gamma] = [L phi; L p] solved in the
/// stencil-local frame (shifted to the center and scaled by Stencil::scale).
/// Monomials that are linearly dependent on the stencil nodes are dropped when
/// their constraint is implied by the remaining ones.
StencilWeights stencil_weights(const Stencil& stencil, std::span<const Point2> points,
                               const OperatorCoeffs& coeffs, const PhsBasis& phs, const PolySpace& poly,
                               const WeightOptions& options = {});

struct AssemblyOptions {
    PhsBasis phs{5};
    PolySpace poly{4};
    WeightOptions weights;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct AssemblyStats {
    double max_condition = 0.0;
    double max_residual = 0.0;
};

/// Weight solves for every stencil, possibly on several threads. On failure
/// the error of the lowest-numbered failing stencil is rethrown.
std::vector<StencilWeights> compute_weights(const NodeLayout& layout, std::span<const Stencil> stencils,
                                            const CoeffField& coeffs, const AssemblyOptions& options = {});

/// Scatter per-stencil weights into an N x N matrix.
SparseMatrix assemble_weights(const NodeLayout& layout, std::span<const Stencil> stencils,
                              std::span<const StencilWeights> weights, AssemblyStats* stats = nullptr);

/// Differentiation matrix with one row per stencil; Dirichlet rows stay empty.
/// The result does not depend on the number of threads.
SparseMatrix assemble(const NodeLayout& layout, std::span<const Stencil> stencils, const CoeffField& coeffs,
                      const AssemblyOptions& options = {}, AssemblyStats* stats = nullptr);

}  // namespace mfp
