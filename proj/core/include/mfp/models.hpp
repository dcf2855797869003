#pragma once

#include "mfp/geometry.hpp"
#include "mfp/nodegen.hpp"
#include "mfp/params.hpp"
#include "mfp/rbffd.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace mfp {

enum class ProblemKind { basket_european_call, basket_american_put, heston_european_call };

std::string_view problem_name(ProblemKind kind) noexcept;
ProblemKind parse_problem_kind(std::string_view name);

/// A pricing problem in price units. The domain scale factors are the far
/// field positions: s1 + s2 <= 8K for the basket, s <= 4K and v <= v_max for
/// Heston.
struct ProblemSpec {
    ProblemKind kind = ProblemKind::basket_european_call;
    BasketParams basket;
    HestonParams heston;
    Domain2D domain = Domain2D::triangle(800.0);
    std::vector<Point2> eval_points;

    static ProblemSpec basket_call(const BasketParams& params = {});
    static ProblemSpec basket_put(const BasketParams& params = {});
    static ProblemSpec heston_call(const HestonParams& params = {}, double v_max = 0.5);

    bool is_basket() const noexcept { return kind != ProblemKind::heston_european_call; }
    double strike() const noexcept { return is_basket() ? basket.K : heston.K; }
    double maturity() const noexcept { return is_basket() ? basket.T : heston.T; }
    double rate() const noexcept { return is_basket() ? basket.r : heston.r; }
};

/// Basket operator at a scaled point x = s / (8K). The operator is invariant
/// under uniform scaling of s.
OperatorCoeffs bs_coeffs(Point2 x, const BasketParams& params);

/// Heston operator at scaled (x, y) = (s / s_max, v / v_max). The s-scaling
/// cancels because s enters only through s d/ds.
OperatorCoeffs heston_coeffs(Point2 x, const HestonParams& params, double v_max);

/// Payoff in currency at a price-unit point (second coordinate ignored for Heston).
double payoff(ProblemKind kind, Point2 s, double K);

/// Dirichlet data in currency at time to maturity `tau`; nullopt for PDE nodes.
/// Throws if `role` does not match the point's position on the boundary.
std::optional<double> boundary_value(const ProblemSpec& spec, Point2 s, NodeRole role, double tau);

/// A problem on the unit domain. Prices are divided by `price_scale`.
struct ScaledProblem {
    ProblemSpec spec;
    double price_scale = 1.0;  // domain width: 8K (basket) or 4K (Heston)
    double strike_hat = 0.125;
    CoeffField coeffs;
    std::vector<Point2> eval_points;  // scaled coordinates

    Point2 to_price_point(Point2 x) const noexcept { return spec.domain.to_price(x); }
    double to_price(double scaled_value) const noexcept { return scaled_value * price_scale; }
    double to_scaled(double price) const noexcept { return price / price_scale; }

    double payoff(Point2 x) const;
    std::optional<double> boundary(Point2 x, NodeRole role, double tau) const;
};

ScaledProblem scale_problem(const ProblemSpec& spec);

}  // namespace mfp
