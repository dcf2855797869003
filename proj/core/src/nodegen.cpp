#include "mfp/nodegen.hpp"

#include "mfp/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mfp {

std::string_view role_tag(NodeRole role) noexcept {
    switch (role) {
        case NodeRole::interior: return "I";
        case NodeRole::close_field: return "CF";
        case NodeRole::far_field: return "FF";
        case NodeRole::evaluation: return "EV";
    }
    return "I";
}

NodeRole parse_role_tag(std::string_view tag) {
    if (tag == "I") return NodeRole::interior;
    if (tag == "CF") return NodeRole::close_field;
    if (tag == "FF") return NodeRole::far_field;
    if (tag == "EV") return NodeRole::evaluation;
    throw std::invalid_argument("unknown node role tag: " + std::string(tag));
}

std::string_view layout_name(LayoutKind kind) noexcept {
    switch (kind) {
        case LayoutKind::cartesian: return "cartesian";
        case LayoutKind::adapted: return "adapted";
        case LayoutKind::smooth: return "smooth";
    }
    return "cartesian";
}

LayoutKind parse_layout_kind(std::string_view name) {
    if (name == "cartesian") return LayoutKind::cartesian;
    if (name == "adapted") return LayoutKind::adapted;
    if (name == "smooth") return LayoutKind::smooth;
    throw std::invalid_argument("unknown layout: " + std::string(name));
}

NodeRole boundary_role(const Domain2D& domain, Point2 p, double tol) noexcept {
    if (domain.kind() == DomainKind::triangle) {
        if (std::abs(p.x + p.y - 1.0) <= tol) return NodeRole::far_field;
        if (std::abs(p.x) <= tol && std::abs(p.y) <= tol) return NodeRole::close_field;
        return NodeRole::interior;
    }
    if (std::abs(p.x - 1.0) <= tol) return NodeRole::far_field;
    if (std::abs(p.x) <= tol) return NodeRole::close_field;
    return NodeRole::interior;
}

std::vector<std::size_t> NodeLayout::indices_with(NodeRole role) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < roles.size(); ++i) {
        if (roles[i] == role) out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structured layouts

GridAxis GridAxis::uniform(std::size_t count) {
    GridAxis a;
    a.count = count;
    return a;
}

GridAxis GridAxis::sinh(std::size_t count, double width, double center) {
    if (!(center > 0.0 && center < 1.0)) {
        throw std::invalid_argument("sinh axis: cluster center must lie in (0,1)");
    }
    if (!(width > 0.0)) throw std::invalid_argument("sinh axis: density parameter H must be positive");
    GridAxis a;
    a.count = count;
    a.clustered = true;
    a.center = center;
    a.width = width;
    a.z_begin = std::asinh(-center / width);
    // Divisor count-1 (not count) so that the last node lands exactly on 1.
    a.z_step = (std::asinh((1.0 - center) / width) - a.z_begin) / static_cast<double>(count - 1);
    return a;
}

double GridAxis::at(double index) const noexcept {
    const double last = static_cast<double>(count - 1);
    if (!clustered) return index / last;
    if (index <= 0.0) return 0.0;
    if (index >= last) return 1.0;
    return center + width * std::sinh(z_begin + index * z_step);
}

double GridAxis::index_of(double x) const noexcept {
    const double last = static_cast<double>(count - 1);
    if (!clustered) return x * last;
    return (std::asinh((x - center) / width) - z_begin) / z_step;
}

std::vector<double> GridAxis::values() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = at(static_cast<double>(i));
    return v;
}

std::size_t GridParameterization::stride() const noexcept {
    return kind == DomainKind::triangle ? diag.count : yaxis.count;
}

std::ptrdiff_t GridParameterization::node(std::ptrdiff_t i, std::ptrdiff_t j) const noexcept {
    const auto s = static_cast<std::ptrdiff_t>(stride());
    const auto rows = static_cast<std::ptrdiff_t>(kind == DomainKind::triangle ? diag.count : xaxis.count);
    if (i < 0 || j < 0 || i >= rows || j >= s) return -1;
    return node_of[static_cast<std::size_t>(i * s + j)];
}

Point2 GridParameterization::position(double i, double j) const noexcept {
    if (kind == DomainKind::rectangle) return {xaxis.at(i), yaxis.at(j)};
    const double level = i + j;
    if (level <= 0.0) return {0.0, 0.0};
    const double scale = diag.at(level) / level;
    return {scale * i, scale * j};
}

Point2 GridParameterization::index_of(Point2 p) const noexcept {
    if (kind == DomainKind::rectangle) return {xaxis.index_of(p.x), yaxis.index_of(p.y)};
    const double s = p.x + p.y;
    if (s <= 0.0) return {0.0, 0.0};
    const double level = diag.index_of(s);
    return {level * p.x / s, level * p.y / s};
}

namespace {

NodeLayout structured_layout(const Domain2D& domain, LayoutKind kind, GridParameterization grid) {
    NodeLayout layout;
    layout.domain = domain;
    layout.kind = kind;
    const std::size_t stride = grid.stride();
    if (domain.kind() == DomainKind::rectangle) {
        grid.node_of.assign(grid.xaxis.count * stride, -1);
        for (std::size_t i = 0; i < grid.xaxis.count; ++i) {
            for (std::size_t j = 0; j < grid.yaxis.count; ++j) {
                grid.node_of[i * stride + j] = static_cast<std::ptrdiff_t>(layout.nodes.size());
                layout.nodes.push_back(grid.position(static_cast<double>(i), static_cast<double>(j)));
            }
        }
    } else {
        const std::size_t k = grid.diag.count;
        grid.node_of.assign(k * stride, -1);
        // Row by row in x2 so neighboring indices are spatial neighbors.
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i + j < k; ++i) {
                grid.node_of[i * stride + j] = static_cast<std::ptrdiff_t>(layout.nodes.size());
                Point2 p = grid.position(static_cast<double>(i), static_cast<double>(j));
                if (i + j == k - 1) {
                    // Snap the hypotenuse exactly onto x1+x2 = 1.
                    p = {static_cast<double>(i) / static_cast<double>(k - 1),
                         static_cast<double>(j) / static_cast<double>(k - 1)};
                }
                layout.nodes.push_back(p);
            }
        }
    }
    layout.roles.reserve(layout.nodes.size());
    for (const Point2& p : layout.nodes) layout.roles.push_back(boundary_role(domain, p));
    layout.grid = std::move(grid);
    return layout;
}

}  // namespace

NodeLayout cartesian_layout(const Domain2D& domain, std::size_t nodes_per_axis) {
    if (nodes_per_axis < 2) throw std::invalid_argument("cartesian_layout: need at least 2 nodes per axis");
    GridParameterization grid;
    grid.kind = domain.kind();
    if (domain.kind() == DomainKind::rectangle) {
        grid.xaxis = GridAxis::uniform(nodes_per_axis);
        grid.yaxis = GridAxis::uniform(nodes_per_axis);
    } else {
        grid.diag = GridAxis::uniform(nodes_per_axis);
    }
    return structured_layout(domain, LayoutKind::cartesian, std::move(grid));
}

std::vector<double> sinh_nodes(std::size_t count, double H, double center) {
    if (count < 2) throw std::invalid_argument("sinh_nodes: need at least 2 nodes");
    return GridAxis::sinh(count, H, center).values();
}

NodeLayout adapted_layout(const Domain2D& domain, std::size_t nodes_per_axis, double H, double K_hat) {
    if (nodes_per_axis < 2) throw std::invalid_argument("adapted_layout: need at least 2 nodes per axis");
    if (!(K_hat > 0.0 && K_hat < 1.0)) throw std::invalid_argument("adapted_layout: K_hat must lie in (0,1)");
    GridParameterization grid;
    grid.kind = domain.kind();
    if (domain.kind() == DomainKind::rectangle) {
        grid.xaxis = GridAxis::sinh(nodes_per_axis, H, K_hat);
        grid.yaxis = GridAxis::uniform(nodes_per_axis);
    } else {
        // Cluster along the diagonal: the strike line mean(x) = K_hat is x1+x2 = 2 K_hat.
        if (!(2.0 * K_hat < 1.0)) throw std::invalid_argument("adapted_layout: strike line outside triangle");
        grid.diag = GridAxis::sinh(nodes_per_axis, H, 2.0 * K_hat);
    }
    return structured_layout(domain, LayoutKind::adapted, std::move(grid));
}

// ---------------------------------------------------------------------------
// Smoothly varying layouts

double radius(const RadiusParams& params, Point2 p) {
    if (params.constant) return *params.constant;
    const double d1 = p.x - params.X1;
    const double d2 = p.y - params.X2;
    const double c = std::cos(params.G);
    const double s = std::sin(params.G);
    const double u = (d1 * c + d2 * s) / params.P;
    const double v = (d1 * s - d2 * c) / params.Q;
    return (u * u + v * v + 1.0) / std::sqrt(params.N);
}

std::vector<Point2> advancing_front_fill(const Rect& box, const RadiusFn& R) {
    if (!(box.xmax > box.xmin) || !(box.ymax > box.ymin)) {
        throw std::invalid_argument("advancing_front_fill: degenerate rectangle");
    }
    // Potential dot positions, kept sorted by x.
    std::vector<Point2> front;
    for (double x = box.xmin; x <= box.xmax;) {
        front.push_back({x, box.ymin});
        x += R({x, box.ymin});
    }

    std::vector<Point2> dots;
    std::vector<Point2> fresh;
    while (!front.empty()) {
        std::size_t i = 0;
        for (std::size_t k = 1; k < front.size(); ++k) {
            if (front[k].y < front[i].y) i = k;
        }
        const Point2 dot = front[i];
        dots.push_back(dot);
        const double r = R(dot);

        std::size_t lo = i;
        std::size_t hi = i;
        while (lo > 0 && distance(front[lo - 1], dot) < r) --lo;
        while (hi + 1 < front.size() && distance(front[hi + 1], dot) < r) ++hi;

        double ang_left = std::numbers::pi;
        double ang_right = 0.0;
        if (lo > 0) ang_left = std::atan2(front[lo - 1].y - dot.y, front[lo - 1].x - dot.x);
        if (hi + 1 < front.size()) ang_right = std::atan2(front[hi + 1].y - dot.y, front[hi + 1].x - dot.x);

        fresh.clear();
        for (const double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double ang = ang_left - f * (ang_left - ang_right);
            const Point2 c{dot.x + r * std::cos(ang), dot.y + r * std::sin(ang)};
            if (c.x >= box.xmin && c.x <= box.xmax && c.y <= box.ymax) fresh.push_back(c);
        }
        front.erase(front.begin() + static_cast<std::ptrdiff_t>(lo),
                    front.begin() + static_cast<std::ptrdiff_t>(hi + 1));
        front.insert(front.begin() + static_cast<std::ptrdiff_t>(lo), fresh.begin(), fresh.end());
    }
    return dots;
}

std::vector<Point2> advancing_front_fill(const Rect& box, const RadiusParams& params) {
    return advancing_front_fill(box, [&params](Point2 p) { return radius(params, p); });
}

namespace {

// Nodes on segment a->b (a included, b excluded) with spacing following R.
void march_edge(Point2 a, Point2 b, const RadiusFn& R, std::vector<Point2>& out) {
    constexpr int kSamples = 4096;
    const double len = distance(a, b);
    // Cumulative count of spacings, integrating 1/R with the midpoint rule.
    std::vector<double> cum(kSamples + 1, 0.0);
    for (int k = 0; k < kSamples; ++k) {
        const double t = (k + 0.5) / kSamples;
        cum[k + 1] = cum[k] + (len / kSamples) / R(a + t * (b - a));
    }
    const auto segments = std::max<long>(1, std::lround(cum.back()));
    out.push_back(a);
    int k = 0;
    for (long s = 1; s < segments; ++s) {
        const double target = cum.back() * static_cast<double>(s) / static_cast<double>(segments);
        while (cum[k + 1] < target) ++k;
        const double frac = (target - cum[k]) / (cum[k + 1] - cum[k]);
        const double t = (k + frac) / kSamples;
        out.push_back(a + t * (b - a));
    }
}

std::vector<Point2> domain_corners(const Domain2D& domain) {
    if (domain.kind() == DomainKind::triangle) return {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
}

}  // namespace

std::vector<Point2> boundary_nodes(const Domain2D& domain, const RadiusFn& R) {
    const auto corners = domain_corners(domain);
    std::vector<Point2> out;
    for (std::size_t c = 0; c < corners.size(); ++c) {
        march_edge(corners[c], corners[(c + 1) % corners.size()], R, out);
    }
    return out;
}

NodeLayout smooth_layout(const Domain2D& domain, std::span<const Point2> boundary,
                         std::span<const Point2> pinned, const RadiusParams& params,
                         int repel_iterations, std::size_t repel_neighbors) {
    if (boundary.empty()) throw std::invalid_argument("smooth_layout: no boundary nodes");
    for (const Point2& p : pinned) {
        if (!domain.contains(p) || domain.on_boundary(p)) {
            throw std::invalid_argument("smooth_layout: pinned node outside the domain interior");
        }
    }
    const auto R = [&params](Point2 p) { return radius(params, p); };

    double max_spacing = 0.0;
    for (const Point2& c : domain_corners(domain)) max_spacing = std::max(max_spacing, R(c));
    const double margin = 2.0 * max_spacing;
    const Rect box{-margin, -margin, 1.0 + margin, 1.0 + margin};
    const std::vector<Point2> fill = advancing_front_fill(box, R);

    std::vector<Point2> fixed(boundary.begin(), boundary.end());
    fixed.insert(fixed.end(), pinned.begin(), pinned.end());
    const KdTree fixed_tree(fixed);

    NodeLayout layout;
    layout.domain = domain;
    layout.kind = LayoutKind::smooth;
    layout.density = params.N;
    layout.nodes = fixed;
    for (const Point2& p : boundary) layout.roles.push_back(boundary_role(domain, p));
    layout.roles.insert(layout.roles.end(), pinned.size(), NodeRole::evaluation);

    const double edge_tol = 1e-9 * max_spacing;
    for (const Point2& p : fill) {
        if (domain.inside_distance(p) <= edge_tol) continue;
        if (fixed_tree.nearest(p).distance < 0.5 * R(p)) continue;
        layout.nodes.push_back(p);
        layout.roles.push_back(NodeRole::interior);
    }

    const std::size_t n_fixed = fixed.size();
    const std::size_t total = layout.nodes.size();
    if (repel_iterations <= 0 || repel_neighbors == 0 || total <= n_fixed) return layout;
    const std::size_t b = std::min(repel_neighbors, total - 1);

    std::vector<char> movable(total, 0);
    {
        const KdTree tree(layout.nodes);
        for (std::size_t f = 0; f < n_fixed; ++f) {
            for (const Neighbor& nb : tree.nearest(layout.nodes[f], b + 1)) {
                if (nb.index >= n_fixed) movable[nb.index] = 1;
            }
        }
    }

    for (int it = 0; it < repel_iterations; ++it) {
        const KdTree tree(layout.nodes);
        std::vector<Point2> next = layout.nodes;
        for (std::size_t j = n_fixed; j < total; ++j) {
            if (!movable[j]) continue;
            const Point2 x = layout.nodes[j];
            const double rj = R(x);
            // Dimensionless r^-3 repulsion: sum of (R/r)^3 times unit vectors.
            Point2 force{};
            for (const Neighbor& nb : tree.nearest(x, b + 1)) {
                if (nb.index == j || nb.distance <= 0.0) continue;
                const Point2 unit = (1.0 / nb.distance) * (x - layout.nodes[nb.index]);
                const double w = std::pow(rj / nb.distance, 3);
                force = force + w * unit;
            }
            const double fnorm = norm(force);
            if (fnorm == 0.0) continue;
            Point2 step = (0.1 * rj / std::max(fnorm, 1.0)) * force;
            const double keep_off = std::min(domain.inside_distance(x), 0.25 * rj);
            for (int halving = 0; halving < 5; ++halving) {
                const Point2 trial = domain.project(x + step);
                if (domain.inside_distance(trial) >= keep_off && domain.inside_distance(trial) > edge_tol) {
                    next[j] = trial;
                    break;
                }
                step = 0.5 * step;
            }
        }
        layout.nodes = std::move(next);
    }
    return layout;
}

NodeLayout make_smooth_layout(const Domain2D& domain, std::span<const Point2> pinned,
                              const RadiusParams& params, int repel_iterations,
                              std::size_t repel_neighbors) {
    const auto bnd = boundary_nodes(domain, [&params](Point2 p) { return radius(params, p); });
    return smooth_layout(domain, bnd, pinned, params, repel_iterations, repel_neighbors);
}

double density_for_count(const Domain2D& domain, RadiusParams shape, double target) {
    if (!(target > 0.0)) throw std::invalid_argument("density_for_count: target must be positive");
    shape.N = 1.0;
    constexpr int kCells = 400;
    const double h = 1.0 / kCells;
    double integral = 0.0;
    for (int i = 0; i < kCells; ++i) {
        for (int j = 0; j < kCells; ++j) {
            const Point2 c{(i + 0.5) * h, (j + 0.5) * h};
            if (domain.kind() == DomainKind::triangle && c.x + c.y > 1.0) continue;
            const double r = radius(shape, c);
            integral += h * h / (r * r);
        }
    }
    // Hexagonal packing: each node owns an area of (sqrt(3)/2) R^2.
    const double per_unit_density = 2.0 / std::sqrt(3.0) * integral;
    return target / per_unit_density;
}

SpacingStats spacing_stats(std::span<const Point2> nodes) {
    SpacingStats s;
    if (nodes.size() < 2) return s;
    const KdTree tree(nodes);
    s.min_distance = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const Point2& p : nodes) {
        const double d = tree.nearest(p, 2)[1].distance;
        s.min_distance = std::min(s.min_distance, d);
        s.max_nn_distance = std::max(s.max_nn_distance, d);
        sum += d;
    }
    s.mean_nn_distance = sum / static_cast<double>(nodes.size());
    return s;
}

}  // namespace mfp
