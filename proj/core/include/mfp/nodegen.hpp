#pragma once

#include "mfp/geometry.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mfp {

enum class NodeRole { interior, close_field, far_field, evaluation };
enum class LayoutKind { cartesian, adapted, smooth };

std::string_view role_tag(NodeRole role) noexcept;        // I, CF, FF, EV
NodeRole parse_role_tag(std::string_view tag);
std::string_view layout_name(LayoutKind kind) noexcept;
LayoutKind parse_layout_kind(std::string_view name);

/// Close/far field nodes carry Dirichlet data; every other role gets a PDE row.
inline bool is_dirichlet(NodeRole role) noexcept {
    return role == NodeRole::close_field || role == NodeRole::far_field;
}

/// Boundary role convention shared by all problems: the origin (triangle) or
/// the x=0 edge (rectangle) is close field, the hypotenuse (triangle) or the
/// x=1 edge (rectangle) is far field, everything else is a PDE node.
NodeRole boundary_role(const Domain2D& domain, Point2 p, double tol = 1e-12) noexcept;

/// One-dimensional node map on [0,1], either equispaced or sinh-clustered
/// around `center`. Index coordinates run from 0 to count-1.
struct GridAxis {
    std::size_t count = 0;
    bool clustered = false;
    double center = 0.0;
    double width = 0.0;    // sinh density parameter H
    double z_begin = 0.0;
    double z_step = 0.0;

    static GridAxis uniform(std::size_t count);
    static GridAxis sinh(std::size_t count, double width, double center);

    double at(double index) const noexcept;
    double index_of(double x) const noexcept;
    std::vector<double> values() const;
};

/// Index-space description of structured layouts, used for cubic interpolation
/// at points that are not nodes.
///
/// Rectangle: node (i,j) sits at (xaxis[i], yaxis[j]).
/// Triangle: node (i,j) with i+j <= k-1 sits at diag(i+j)/(i+j) * (i,j), where
/// diag maps the level index to the value of x1+x2. Uniform `diag` reproduces
/// the Cartesian grid.
struct GridParameterization {
    DomainKind kind = DomainKind::rectangle;
    GridAxis xaxis;   // rectangle only
    GridAxis yaxis;   // rectangle only
    GridAxis diag;    // triangle only
    std::vector<std::ptrdiff_t> node_of;  // row-major (i * stride + j); -1 where absent

    std::size_t stride() const noexcept;
    std::ptrdiff_t node(std::ptrdiff_t i, std::ptrdiff_t j) const noexcept;
    Point2 position(double i, double j) const noexcept;
    /// Continuous (i, j) index coordinates of a point.
    Point2 index_of(Point2 p) const noexcept;
};

struct NodeLayout {
    Domain2D domain = Domain2D::rectangle(1.0, 1.0);
    LayoutKind kind = LayoutKind::cartesian;
    std::vector<Point2> nodes;
    std::vector<NodeRole> roles;
    std::optional<GridParameterization> grid;
    double density = 0.0;  // density parameter N of the radius function (smooth only)

    std::size_t size() const noexcept { return nodes.size(); }
    std::vector<std::size_t> indices_with(NodeRole role) const;
};

/// Equispaced tensor grid; triangle domains keep the nodes with x1+x2 <= 1.
NodeLayout cartesian_layout(const Domain2D& domain, std::size_t nodes_per_axis);

/// 1-D sinh map x_i = center + H sinh(z_i) with exact endpoints 0 and 1.
std::vector<double> sinh_nodes(std::size_t count, double H, double center);

/// Strike-clustered layout. On rectangles the map acts on the first axis only;
/// on triangles it acts on x1+x2 with the cluster at the strike line
/// x1+x2 = 2*K_hat.
NodeLayout adapted_layout(const Domain2D& domain, std::size_t nodes_per_axis, double H, double K_hat);

struct RadiusParams {
    double N = 1000.0;
    double X1 = 0.0;
    double X2 = 0.0;
    double P = 1.0;
    double Q = 1.0;
    double G = 0.0;
    /// Test mode: when set, R(x) is this constant everywhere.
    std::optional<double> constant;
};

/// Local target spacing R(x) = (u^2 + v^2 + 1) / sqrt(N), where (u, v) is
/// x - (X1, X2) rotated by G and divided by (P, Q). R >= 1/sqrt(N), with
/// equality only at (X1, X2).
double radius(const RadiusParams& params, Point2 p);

using RadiusFn = std::function<double(Point2)>;

struct Rect {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 1.0;
    double ymax = 1.0;
};

/// Advancing-front fill of `box` with spacing following `R`.
std::vector<Point2> advancing_front_fill(const Rect& box, const RadiusFn& R);
std::vector<Point2> advancing_front_fill(const Rect& box, const RadiusParams& params);

/// Boundary nodes by arc-length marching with step R(x); corners included.
std::vector<Point2> boundary_nodes(const Domain2D& domain, const RadiusFn& R);

/// Fill, superpose, cull and repel. Boundary and pinned nodes never move.
NodeLayout smooth_layout(const Domain2D& domain, std::span<const Point2> boundary,
                         std::span<const Point2> pinned, const RadiusParams& params,
                         int repel_iterations, std::size_t repel_neighbors);

/// smooth_layout with boundary nodes generated from the same radius function.
NodeLayout make_smooth_layout(const Domain2D& domain, std::span<const Point2> pinned,
                              const RadiusParams& params, int repel_iterations,
                              std::size_t repel_neighbors);

/// Density parameter N for which the hex-packing estimate of the node count
/// over `domain` equals `target`. Only the shape parameters of `shape` are used.
double density_for_count(const Domain2D& domain, RadiusParams shape, double target);

/// Plain-text layout format: header `# N=<count> domain=<kind>`, then `x y role`.
void write_layout(std::ostream& os, const NodeLayout& layout);
NodeLayout read_layout(std::istream& is);

struct SpacingStats {
    double min_distance = 0.0;
    double mean_nn_distance = 0.0;
    double max_nn_distance = 0.0;
};
SpacingStats spacing_stats(std::span<const Point2> nodes);

}  // namespace mfp
