#include <doctest.h>

#include "mfp/experiment.hpp"
#include "mfp/kdtree.hpp"
#include "mfp/nodegen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace mfp;

namespace {

double min_pairwise(std::span<const Point2> pts) {
    double best = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, distance(pts[i], pts[j]));
    }
    return best;
}

}  // namespace

TEST_CASE("cartesian layouts") {
    const auto sq = cartesian_layout(Domain2D::rectangle(1.0, 1.0), 3);
    CHECK(sq.size() == 9);
    CHECK(spacing_stats(sq.nodes).min_distance == doctest::Approx(0.5));

    const auto tri = cartesian_layout(Domain2D::triangle(1.0), 3);
    CHECK(tri.size() == 6);
    for (const Point2& p : tri.nodes) CHECK(p.x + p.y <= 1.0 + 1e-15);
    CHECK(tri.indices_with(NodeRole::close_field).size() == 1);
    CHECK(tri.indices_with(NodeRole::far_field).size() == 3);

    const auto big = cartesian_layout(Domain2D::rectangle(1.0, 1.0), 101);
    CHECK(big.size() == 10201);
    CHECK(spacing_stats(big.nodes).min_distance == doctest::Approx(0.01).epsilon(1e-12));

    CHECK_THROWS(cartesian_layout(Domain2D::rectangle(1.0, 1.0), 1));
}

TEST_CASE("sinh node map") {
    for (double H : {0.05, 0.1, 0.5}) {
        const auto x = sinh_nodes(21, H, 0.125);
        CHECK(x.front() == 0.0);
        CHECK(x.back() == 1.0);
        CHECK(std::is_sorted(x.begin(), x.end()));
    }
    // Smallest gap sits next to the node closest to the cluster center.
    const auto x = sinh_nodes(11, 0.1, 0.125);
    std::size_t gap_at = 0;
    double gap = INFINITY;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (x[i + 1] - x[i] < gap) {
            gap = x[i + 1] - x[i];
            gap_at = i;
        }
    }
    std::size_t nearest = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i] - 0.125) < std::abs(x[nearest] - 0.125)) nearest = i;
    }
    CHECK((gap_at == nearest || gap_at + 1 == nearest));
}

TEST_CASE("adapted layout clusters at the strike line") {
    const auto tri = adapted_layout(Domain2D::triangle(1.0), 41, 0.1, 0.125);
    CHECK(tri.size() == 41 * 42 / 2);
    for (const Point2& p : tri.nodes) CHECK(p.x + p.y <= 1.0 + 1e-12);
    const auto rect = adapted_layout(Domain2D::rectangle(1.0, 1.0), 21, 0.1, 0.25);
    CHECK(rect.size() == 441);
    const auto s = sinh_nodes(21, 0.1, 0.25);
    for (const Point2& p : rect.nodes) {
        CHECK(std::any_of(s.begin(), s.end(), [&](double v) { return v == p.x; }));
    }
}

TEST_CASE("radius function") {
    RadiusParams p;
    p.N = 400.0;
    p.X1 = 0.3;
    p.X2 = 0.2;
    p.P = 0.5;
    p.Q = 0.25;
    p.G = 0.0;
    CHECK(radius(p, {0.3, 0.2}) == doctest::Approx(1.0 / 20.0));
    // One quadratic term equals one: (1 + 1) / sqrt(N).
    CHECK(radius(p, {0.8, 0.2}) == doctest::Approx(2.0 / 20.0));
    CHECK(radius(p, {0.3, 0.45}) == doctest::Approx(2.0 / 20.0));

    RadiusParams b;
    b.N = 1000.0;
    b.X1 = b.X2 = 0.125;
    b.P = 0.25;
    b.Q = 0.75;
    b.G = std::numbers::pi / 4.0;
    CHECK(radius(b, {0.125, 0.125}) == doctest::Approx(0.031623).epsilon(1e-5));
    // Rotation by G: unit step along the rotated first axis costs P.
    const double c = std::cos(b.G), s = std::sin(b.G);
    CHECK(radius(b, {0.125 + 0.25 * c, 0.125 + 0.25 * s}) == doctest::Approx(2.0 / std::sqrt(1000.0)));
    CHECK(radius(b, {0.125 + 0.75 * s, 0.125 - 0.75 * c}) == doctest::Approx(2.0 / std::sqrt(1000.0)));
    for (double x = 0.0; x <= 1.0; x += 0.1) {
        for (double y = 0.0; y <= 1.0; y += 0.1) CHECK(radius(b, {x, y}) >= 1.0 / std::sqrt(1000.0));
    }

    RadiusParams k;
    k.constant = 0.07;
    CHECK(radius(k, {0.9, 0.1}) == 0.07);
}

TEST_CASE("advancing front with constant spacing packs hexagonally") {
    const double h = 0.02;
    RadiusParams p;
    p.constant = h;
    const auto pts = advancing_front_fill(Rect{0.0, 0.0, 1.0, 1.0}, p);
    // The front packs a little looser than a hexagonal lattice; close pairs
    // only occur along the box edges.
    const double hex = 2.0 / (std::sqrt(3.0) * h * h);
    CHECK(static_cast<double>(pts.size()) > 0.7 * hex);
    CHECK(static_cast<double>(pts.size()) < 0.95 * hex);
    const KdTree tree(pts);
    for (const Point2& x : pts) {
        if (std::min({x.x, x.y, 1.0 - x.x, 1.0 - x.y}) < 2.0 * h) continue;
        CHECK(tree.nearest(x, 2)[1].distance >= 0.85 * h);
    }
    CHECK_THROWS(advancing_front_fill(Rect{0.0, 0.0, 1.0, 0.0}, p));
}

TEST_CASE("advancing front respects variable spacing") {
    RadiusParams p = default_shape(ProblemKind::basket_european_call);
    p.N = 20000.0;
    const auto pts = advancing_front_fill(Rect{0.0, 0.0, 1.0, 1.0}, p);
    const KdTree tree(pts);
    for (const Point2& x : pts) {
        if (std::min({x.x, x.y, 1.0 - x.x, 1.0 - x.y}) < 2.0 * radius(p, x)) continue;
        const auto nb = tree.nearest(x, 2);
        CHECK(nb[1].distance >= 0.7 * radius(p, x));
    }
}

TEST_CASE("smooth layout keeps pinned nodes and improves the boundary band") {
    const Domain2D dom = Domain2D::triangle(800.0);
    const std::vector<Point2> pinned{{90.0 / 800, 90.0 / 800}, {100.0 / 800, 100.0 / 800}, {110.0 / 800, 110.0 / 800}};
    RadiusParams p = default_shape(ProblemKind::basket_european_call);
    p.N = 1500.0;

    const auto still = make_smooth_layout(dom, pinned, p, 0, 32);
    const auto moved = make_smooth_layout(dom, pinned, p, 4, 32);
    for (const Point2& q : pinned) {
        CHECK(std::find(moved.nodes.begin(), moved.nodes.end(), q) != moved.nodes.end());
    }
    CHECK(moved.indices_with(NodeRole::evaluation).size() == 3);
    REQUIRE(still.size() == moved.size());

    // a = 0: superposition and culling only, so every node is a fill, boundary or pinned point.
    const double margin = 2.0 * std::max({radius(p, {0, 0}), radius(p, {1, 0}), radius(p, {0, 1})});
    const auto fill = advancing_front_fill(Rect{-margin, -margin, 1.0 + margin, 1.0 + margin}, p);
    const auto bnd = boundary_nodes(dom, [&](Point2 x) { return radius(p, x); });
    for (std::size_t j = 0; j < still.size(); ++j) {
        const Point2 q = still.nodes[j];
        const bool known = std::find(fill.begin(), fill.end(), q) != fill.end() ||
                           std::find(bnd.begin(), bnd.end(), q) != bnd.end() ||
                           std::find(pinned.begin(), pinned.end(), q) != pinned.end();
        CHECK(known);
    }

    // Boundary band: the 32 nearest neighbors of every fixed node.
    const std::size_t n_fixed = bnd.size() + pinned.size();
    std::vector<char> band(still.size(), 0);
    const KdTree tree(still.nodes);
    for (std::size_t f = 0; f < n_fixed; ++f) {
        for (const Neighbor& nb : tree.nearest(still.nodes[f], 33)) {
            if (nb.index >= n_fixed) band[nb.index] = 1;
        }
    }
    auto band_min = [&](const NodeLayout& l) {
        const KdTree t(l.nodes);
        double m = INFINITY;
        for (std::size_t j = 0; j < l.size(); ++j) {
            if (band[j]) m = std::min(m, t.nearest(l.nodes[j], 2)[1].distance);
        }
        return m;
    };
    CHECK(band_min(moved) >= band_min(still));
    for (const Point2& q : moved.nodes) CHECK(dom.contains(q));
}

TEST_CASE("target node counts and roles of built layouts") {
    const ScaledProblem bp = scale_problem(ProblemSpec::basket_call());
    LayoutOptions o;
    const auto l = build_layout(bp, o, 1000);
    CHECK(std::abs(static_cast<double>(l.size()) - 1000.0) <= 50.0);
    CHECK(l.indices_with(NodeRole::evaluation).size() == 3);
    CHECK(l.indices_with(NodeRole::close_field).size() == 1);
    for (std::size_t j : l.indices_with(NodeRole::far_field)) {
        CHECK(l.nodes[j].x + l.nodes[j].y == doctest::Approx(1.0).epsilon(1e-12));
    }

    const ScaledProblem hp = scale_problem(ProblemSpec::heston_call());
    const auto h = build_layout(hp, o, 1000);
    CHECK(std::abs(static_cast<double>(h.size()) - 1000.0) <= 50.0);
    for (std::size_t j : h.indices_with(NodeRole::close_field)) CHECK(h.nodes[j].x == 0.0);
    for (std::size_t j : h.indices_with(NodeRole::far_field)) CHECK(h.nodes[j].x == 1.0);

    o.kind = LayoutKind::cartesian;
    o.nodes_per_axis = 3;
    CHECK(build_layout(bp, o, 0).size() == 6);
}

TEST_CASE("layout text round trip and determinism") {
    const ScaledProblem bp = scale_problem(ProblemSpec::basket_call());
    const auto a = build_layout(bp, LayoutOptions{}, 800);
    const auto b = build_layout(bp, LayoutOptions{}, 800);
    REQUIRE(a.size() == b.size());
    CHECK(std::equal(a.nodes.begin(), a.nodes.end(), b.nodes.begin()));

    std::stringstream ss;
    write_layout(ss, a);
    const auto r = read_layout(ss);
    REQUIRE(r.size() == a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(r.nodes[j] == a.nodes[j]);
        CHECK(r.roles[j] == a.roles[j]);
    }
    CHECK(r.domain.kind() == DomainKind::triangle);
}
