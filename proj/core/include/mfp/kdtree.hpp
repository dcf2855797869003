#pragma once

#include "mfp/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mfp {

struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;
};

/// Balanced 2-D tree for exact k-nearest-neighbor queries.
///
/// Results are ordered by (distance, index), so equidistant points come back
/// in index order and queries agree with a brute-force scan element for
/// element. The tree is immutable after construction; concurrent queries are
/// safe.
class KdTree {
public:
    explicit KdTree(std::span<const Point2> points);

    std::size_t size() const noexcept { return points_.size(); }
    const Point2& point(std::size_t i) const noexcept { return points_[i]; }

    /// The k nearest points to `query`. Throws if k exceeds the point count.
    std::vector<Neighbor> nearest(Point2 query, std::size_t k) const;
    /// Single nearest neighbor.
    Neighbor nearest(Point2 query) const;

private:
    struct Node {
        std::uint32_t begin;
        std::uint32_t end;
        std::int32_t left;
        std::int32_t right;
        int axis;
        double split;
    };

    std::int32_t build(std::uint32_t begin, std::uint32_t end);

    std::vector<Point2> points_;
    std::vector<std::uint32_t> order_;
    std::vector<Node> nodes_;
};

/// Brute-force reference with the same ordering contract as KdTree::nearest.
std::vector<Neighbor> brute_force_nearest(std::span<const Point2> points, Point2 query, std::size_t k);

}  // namespace mfp
