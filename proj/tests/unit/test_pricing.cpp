#include <doctest.h>

#include "mfp/experiment.hpp"
#include "mfp/oracles.hpp"

#include <cmath>
#include <numbers>

using namespace mfp;

namespace {

struct Run {
    ScaledProblem problem;
    NodeLayout layout;
    DiscreteOperator op;
};

Run setup(const ProblemSpec& spec, std::size_t N, LayoutKind kind = LayoutKind::smooth) {
    Run r{scale_problem(spec), {}, {}};
    LayoutOptions lo;
    lo.kind = kind;
    r.layout = build_layout(r.problem, lo, N);
    r.op = discretize(r.problem, r.layout, PricingOptions{});
    return r;
}

}  // namespace

TEST_CASE("without dynamics the payoff is carried through unchanged") {
    const Run r = setup(ProblemSpec::basket_call(), 600);
    const SparseMatrix zero(r.layout.size(), r.layout.size());
    PricingOptions o;
    o.steps = 10;
    const auto res = price_european(r.problem, r.layout, zero, o);
    for (std::size_t j = 0; j < r.layout.size(); ++j) {
        if (is_dirichlet(r.layout.roles[j])) continue;
        CHECK(res.u[j] == doctest::Approx(r.problem.payoff(r.layout.nodes[j])).epsilon(1e-12).scale(1e-12));
    }
}

TEST_CASE("European basket call") {
    const Run r = setup(ProblemSpec::basket_call(), 4000);
    const auto res = price_european(r.problem, r.layout, r.op.L, PricingOptions{});
    CHECK(res.factorizations == 1);
    CHECK(res.log.size() == 100);
    CHECK(res.grid.elapsed(100) == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(res.eval_values.size() == 3);

    // Deep in the money the call is the discounted forward of the basket.
    const double df = std::exp(-0.03);
    for (std::size_t j = 0; j < r.layout.size(); ++j) {
        const Point2 s = r.problem.to_price_point(r.layout.nodes[j]);
        const double mean = 0.5 * (s.x + s.y);
        if (mean < 200.0 || mean > 350.0) continue;
        CHECK(r.problem.to_price(res.u[j]) == doctest::Approx(mean - 100.0 * df).epsilon(1e-3));
    }
    const double refs[3] = {2.114266691088, 6.717515914025, 14.150966554185};
    for (int k = 0; k < 3; ++k) CHECK(std::abs(res.eval_values[k] - refs[k]) < 0.02);

    const auto again = price_european(r.problem, r.layout, r.op.L, PricingOptions{});
    for (int k = 0; k < 3; ++k) CHECK(again.eval_values[k] == res.eval_values[k]);
}

TEST_CASE("warm starts do not change the answer") {
    const Run r = setup(ProblemSpec::basket_call(), 1500);
    PricingOptions warm;
    warm.gmres.tolerance = 1e-12;
    PricingOptions cold = warm;
    cold.warm_start = false;
    const auto a = price_european(r.problem, r.layout, r.op.L, warm);
    const auto b = price_european(r.problem, r.layout, r.op.L, cold);
    double diff = 0.0;
    for (std::size_t j = 0; j < a.u.size(); ++j) diff = std::max(diff, std::abs(a.u[j] - b.u[j]));
    CHECK(diff <= 1e-9);
    CHECK(a.eval_values[2] >= a.eval_values[1]);
    CHECK(a.eval_values[1] >= a.eval_values[0]);
    CHECK(a.eval_values[0] >= 0.0);
}

TEST_CASE("American basket put") {
    const ProblemSpec put = ProblemSpec::basket_put();
    const Run r = setup(put, 3000);
    const auto am = price_american(r.problem, r.layout, r.op.L, PricingOptions{});
    CHECK(am.factorizations == 1);
    CHECK(am.max_complementarity == 0.0);
    CHECK(am.min_obstacle_gap >= -1e-10);

    for (std::size_t k = 0; k < 3; ++k) {
        const double european = basket_put_reference(put.basket, put.eval_points[k]).value;
        CHECK(am.eval_values[k] > european);
    }

    // Deep in the money the put is exercised: u = g, multiplier active.
    std::size_t deep = 0;
    for (std::size_t j = 0; j < r.layout.size(); ++j) {
        const Point2 s = r.problem.to_price_point(r.layout.nodes[j]);
        if (is_dirichlet(r.layout.roles[j]) || 0.5 * (s.x + s.y) > 10.0) continue;
        ++deep;
        CHECK(am.u[j] == r.problem.payoff(r.layout.nodes[j]));
        CHECK(am.lambda[j] > 0.0);
    }
    CHECK(deep > 0);
    CHECK_THROWS(price_american(scale_problem(ProblemSpec::basket_call()), r.layout, r.op.L, PricingOptions{}));
}

TEST_CASE("Heston call runs on all layouts at moderate size") {
    for (LayoutKind k : {LayoutKind::cartesian, LayoutKind::adapted, LayoutKind::smooth}) {
        const Run r = setup(ProblemSpec::heston_call(), 1500, k);
        const auto res = price(r.problem, r.layout, r.op.L, PricingOptions{});
        const double refs[3] = {2.302535842815, 7.379832496149, 14.974005277144};
        for (int i = 0; i < 3; ++i) CHECK(std::abs(res.eval_values[i] - refs[i]) < 0.5);
    }
}

TEST_CASE("evaluation at points") {
    const auto grid = cartesian_layout(Domain2D::rectangle(1.0, 1.0), 21);
    auto field = [&](auto f) {
        std::vector<double> u(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) u[j] = f(grid.nodes[j]);
        return u;
    };
    const std::vector<Point2> pts{{0.123, 0.456}, {0.9, 0.31}, {0.02, 0.98}, {0.5, 0.5}};

    const auto c = evaluate_at(grid, field([](Point2) { return 3.5; }), pts);
    for (double v : c) CHECK(v == doctest::Approx(3.5).epsilon(1e-14));

    auto cubic = [](Point2 p) { return 1.0 + p.x - 2.0 * p.y * p.x + p.x * p.x * p.y - 0.5 * p.y * p.y * p.y; };
    const auto v = evaluate_at(grid, field(cubic), pts);
    for (std::size_t k = 0; k < pts.size(); ++k) CHECK(std::abs(v[k] - cubic(pts[k])) <= 1e-12);

    const auto tri = cartesian_layout(Domain2D::triangle(1.0), 31);
    std::vector<double> ut(tri.size());
    for (std::size_t j = 0; j < tri.size(); ++j) ut[j] = cubic(tri.nodes[j]);
    const std::vector<Point2> tpts{{0.11, 0.12}, {0.3, 0.05}, {0.2, 0.6}};
    const auto vt = evaluate_at(tri, ut, tpts);
    for (std::size_t k = 0; k < tpts.size(); ++k) CHECK(std::abs(vt[k] - cubic(tpts[k])) <= 1e-12);

    auto wave = [](Point2 p) { return std::sin(std::numbers::pi * p.x) * std::sin(std::numbers::pi * p.y); };
    auto max_err = [&](std::size_t per_axis) {
        const auto g = cartesian_layout(Domain2D::rectangle(1.0, 1.0), per_axis);
        std::vector<double> u(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) u[j] = wave(g.nodes[j]);
        std::vector<Point2> q;
        for (int i = 0; i < 17; ++i) q.push_back({0.05 + 0.9 * i / 16.0, 0.37 + 0.011 * i});
        const auto val = evaluate_at(g, u, q);
        double e = 0.0;
        for (std::size_t k = 0; k < q.size(); ++k) e = std::max(e, std::abs(val[k] - wave(q[k])));
        return e;
    };
    const double ratio = max_err(21) / max_err(41);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);

    CHECK_THROWS(evaluate_at(grid, std::vector<double>(grid.size()), std::vector<Point2>{{1.5, 0.5}}));
}

TEST_CASE("smooth layouts evaluate at their pinned nodes exactly") {
    const Run r = setup(ProblemSpec::basket_call(), 800);
    std::vector<double> u(r.layout.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = static_cast<double>(j);
    const auto v = evaluate_at(r.layout, u, r.problem.eval_points);
    const auto ev = r.layout.indices_with(NodeRole::evaluation);
    for (std::size_t k = 0; k < 3; ++k) CHECK(v[k] == static_cast<double>(ev[k]));
    CHECK_THROWS(evaluate_at(r.layout, u, std::vector<Point2>{{0.3, 0.3}}));
}
