#include "mfp/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mfp {

std::string_view problem_name(ProblemKind kind) noexcept {
    switch (kind) {
        case ProblemKind::basket_european_call: return "basket_european_call";
        case ProblemKind::basket_american_put: return "basket_american_put";
        case ProblemKind::heston_european_call: return "heston_european_call";
    }
    return "basket_european_call";
}

ProblemKind parse_problem_kind(std::string_view name) {
    if (name == "basket_european_call") return ProblemKind::basket_european_call;
    if (name == "basket_american_put") return ProblemKind::basket_american_put;
    if (name == "heston_european_call") return ProblemKind::heston_european_call;
    throw std::invalid_argument("unknown problem: " + std::string(name));
}

ProblemSpec ProblemSpec::basket_call(const BasketParams& params) {
    params.validate();
    ProblemSpec s;
    s.kind = ProblemKind::basket_european_call;
    s.basket = params;
    s.domain = Domain2D::triangle(8.0 * params.K);
    s.eval_points = {{90.0, 90.0}, {100.0, 100.0}, {110.0, 110.0}};
    return s;
}

ProblemSpec ProblemSpec::basket_put(const BasketParams& params) {
    ProblemSpec s = basket_call(params);
    s.kind = ProblemKind::basket_american_put;
    return s;
}

ProblemSpec ProblemSpec::heston_call(const HestonParams& params, double v_max) {
    params.validate();
    ProblemSpec s;
    s.kind = ProblemKind::heston_european_call;
    s.heston = params;
    s.domain = Domain2D::rectangle(4.0 * params.K, v_max);
    s.eval_points = {{90.0, 0.0225}, {100.0, 0.0225}, {110.0, 0.0225}};
    return s;
}

OperatorCoeffs bs_coeffs(Point2 x, const BasketParams& p) {
    OperatorCoeffs c;
    const double xs[2] = {x.x, x.y};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            c.a[i][j] = 0.5 * p.rho[i][j] * p.sigma[i] * p.sigma[j] * xs[i] * xs[j];
        }
        c.b[i] = p.r * xs[i];
    }
    c.c = -p.r;
    return c;
}

OperatorCoeffs heston_coeffs(Point2 x, const HestonParams& p, double v_max) {
    // s = s_max x, v = v_max y; d/ds = (1/s_max) d/dx, d/dv = (1/v_max) d/dy.
    const double v = v_max * x.y;
    OperatorCoeffs c;
    c.a[0][0] = 0.5 * v * x.x * x.x;
    c.a[0][1] = c.a[1][0] = 0.5 * p.rho * p.sigma * v * x.x / v_max;
    c.a[1][1] = 0.5 * p.sigma * p.sigma * v / (v_max * v_max);
    c.b[0] = p.r * x.x;
    c.b[1] = p.kappa * (p.eta - v) / v_max;
    c.c = -p.r;
    return c;
}

double payoff(ProblemKind kind, Point2 s, double K) {
    switch (kind) {
        case ProblemKind::basket_european_call: return std::max(0.5 * (s.x + s.y) - K, 0.0);
        case ProblemKind::basket_american_put: return std::max(K - 0.5 * (s.x + s.y), 0.0);
        case ProblemKind::heston_european_call: return std::max(s.x - K, 0.0);
    }
    return 0.0;
}

std::optional<double> boundary_value(const ProblemSpec& spec, Point2 s, NodeRole role, double tau) {
    if (!is_dirichlet(role)) return std::nullopt;
    const Point2 x = spec.domain.to_scaled(s);
    if (boundary_role(spec.domain, x, 1e-9) != role) {
        throw std::invalid_argument("boundary_value: node role does not match its position");
    }
    const double discounted_strike = spec.strike() * std::exp(-spec.rate() * tau);
    switch (spec.kind) {
        case ProblemKind::basket_european_call:
            if (role == NodeRole::close_field) return 0.0;
            return 0.5 * (s.x + s.y) - discounted_strike;
        case ProblemKind::basket_american_put:
            if (role == NodeRole::close_field) return payoff(spec.kind, s, spec.strike());
            return 0.0;
        case ProblemKind::heston_european_call:
            if (role == NodeRole::close_field) return 0.0;
            return s.x - discounted_strike;
    }
    return std::nullopt;
}

double ScaledProblem::payoff(Point2 x) const {
    return to_scaled(mfp::payoff(spec.kind, to_price_point(x), spec.strike()));
}

std::optional<double> ScaledProblem::boundary(Point2 x, NodeRole role, double tau) const {
    const auto v = boundary_value(spec, to_price_point(x), role, tau);
    if (!v) return std::nullopt;
    return to_scaled(*v);
}

ScaledProblem scale_problem(const ProblemSpec& spec) {
    ScaledProblem out;
    out.spec = spec;
    out.price_scale = spec.domain.scale_x();
    out.strike_hat = spec.strike() / spec.domain.scale_x();
    if (spec.is_basket()) {
        const BasketParams p = spec.basket;
        out.coeffs = [p](Point2 x) { return bs_coeffs(x, p); };
    } else {
        const HestonParams p = spec.heston;
        const double v_max = spec.domain.scale_y();
        out.coeffs = [p, v_max](Point2 x) { return heston_coeffs(x, p, v_max); };
    }
    for (const Point2& e : spec.eval_points) {
        const Point2 x = spec.domain.to_scaled(e);
        if (!spec.domain.contains(x) || spec.domain.on_boundary(x)) {
            throw std::invalid_argument("scale_problem: evaluation point not strictly inside the domain");
        }
        out.eval_points.push_back(x);
    }
    return out;
}

}  // namespace mfp
