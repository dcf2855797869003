#include "mfp/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfp {

Domain2D Domain2D::triangle(double legs) {
    if (!(legs > 0.0)) throw std::invalid_argument("triangle legs must be positive");
    return Domain2D(DomainKind::triangle, legs, legs);
}

Domain2D Domain2D::rectangle(double width, double height) {
    if (!(width > 0.0) || !(height > 0.0)) {
        throw std::invalid_argument("rectangle sides must be positive");
    }
    return Domain2D(DomainKind::rectangle, width, height);
}

std::string_view Domain2D::name() const noexcept {
    return kind_ == DomainKind::triangle ? "triangle" : "rectangle";
}

double Domain2D::inside_distance(Point2 p) const noexcept {
    if (kind_ == DomainKind::rectangle) {
        return std::min({p.x, p.y, 1.0 - p.x, 1.0 - p.y});
    }
    return std::min({p.x, p.y, (1.0 - p.x - p.y) / std::sqrt(2.0)});
}

bool Domain2D::contains(Point2 p, double tol) const noexcept {
    return inside_distance(p) >= -tol;
}

bool Domain2D::on_boundary(Point2 p, double tol) const noexcept {
    return std::abs(inside_distance(p)) <= tol;
}

Point2 Domain2D::project(Point2 p) const noexcept {
    if (kind_ == DomainKind::rectangle) {
        return {std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)};
    }
    if (contains(p, 0.0)) return p;
    // Candidates: clamp into the quadrant, or project onto the hypotenuse segment.
    Point2 best{std::max(p.x, 0.0), std::max(p.y, 0.0)};
    if (best.x + best.y > 1.0) {
        const double t = std::clamp(0.5 * (1.0 + p.x - p.y), 0.0, 1.0);
        best = {t, 1.0 - t};
    }
    return best;
}

DomainKind parse_domain_kind(std::string_view name) {
    if (name == "triangle") return DomainKind::triangle;
    if (name == "rectangle") return DomainKind::rectangle;
    throw std::invalid_argument("unknown domain kind: " + std::string(name));
}

}  // namespace mfp
