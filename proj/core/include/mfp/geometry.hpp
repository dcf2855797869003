#pragma once

#include <cmath>
#include <string>
#include <string_view>

namespace mfp {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline double distance_sq(Point2 a, Point2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

enum class DomainKind { triangle, rectangle };

/// Scaled computational domain.
///
/// Both shapes live on the unit frame: the triangle has vertices (0,0), (1,0),
/// (0,1) and the rectangle is [0,1]x[0,1]. `scale_x`/`scale_y` convert one unit
/// of scaled coordinate back into price (or variance) units.
class Domain2D {
public:
    /// Right triangle whose legs have length `legs` in price units.
    static Domain2D triangle(double legs);
    /// Rectangle of the given width and height in price units.
    static Domain2D rectangle(double width, double height);

    DomainKind kind() const noexcept { return kind_; }
    double scale_x() const noexcept { return scale_x_; }
    double scale_y() const noexcept { return scale_y_; }
    std::string_view name() const noexcept;

    /// Closed-domain membership with an absolute slack `tol`.
    bool contains(Point2 p, double tol = 1e-12) const noexcept;
    /// Signed distance to the boundary, positive inside.
    double inside_distance(Point2 p) const noexcept;
    /// Nearest point of the closed domain.
    Point2 project(Point2 p) const noexcept;
    /// True when `p` lies on the boundary within `tol`.
    bool on_boundary(Point2 p, double tol = 1e-12) const noexcept;

    Point2 to_scaled(Point2 price) const noexcept { return {price.x / scale_x_, price.y / scale_y_}; }
    Point2 to_price(Point2 scaled) const noexcept { return {scaled.x * scale_x_, scaled.y * scale_y_}; }

private:
    Domain2D(DomainKind kind, double sx, double sy) : kind_(kind), scale_x_(sx), scale_y_(sy) {}

    DomainKind kind_;
    double scale_x_;
    double scale_y_;
};

DomainKind parse_domain_kind(std::string_view name);

}  // namespace mfp
