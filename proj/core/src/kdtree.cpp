#include "mfp/kdtree.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <utility>

namespace mfp {

namespace {

constexpr std::uint32_t kLeafSize = 8;

double coord(Point2 p, int axis) { return axis == 0 ? p.x : p.y; }

struct Candidate {
    double dist_sq;
    std::size_t index;
    bool operator<(const Candidate& o) const {
        return dist_sq < o.dist_sq || (dist_sq == o.dist_sq && index < o.index);
    }
};

}  // namespace

KdTree::KdTree(std::span<const Point2> points) : points_(points.begin(), points.end()) {
    if (points_.empty()) throw std::invalid_argument("KdTree: empty point set");
    order_.resize(points_.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    build(0, static_cast<std::uint32_t>(order_.size()));
}

std::int32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({begin, end, -1, -1, 0, 0.0});
    if (end - begin <= kLeafSize) return id;

    double lo[2] = {points_[order_[begin]].x, points_[order_[begin]].y};
    double hi[2] = {lo[0], lo[1]};
    for (std::uint32_t i = begin; i < end; ++i) {
        const Point2 p = points_[order_[i]];
        lo[0] = std::min(lo[0], p.x);
        hi[0] = std::max(hi[0], p.x);
        lo[1] = std::min(lo[1], p.y);
        hi[1] = std::max(hi[1], p.y);
    }
    const int axis = (hi[0] - lo[0] >= hi[1] - lo[1]) ? 0 : 1;
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         const double ca = coord(points_[a], axis);
                         const double cb = coord(points_[b], axis);
                         return ca < cb || (ca == cb && a < b);
                     });
    const double split = coord(points_[order_[mid]], axis);
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    Node& node = nodes_[static_cast<std::size_t>(id)];
    node.axis = axis;
    node.split = split;
    node.left = left;
    node.right = right;
    return id;
}

std::vector<Neighbor> KdTree::nearest(Point2 query, std::size_t k) const {
    if (k == 0) return {};
    if (k > points_.size()) {
        throw std::invalid_argument("KdTree::nearest: k exceeds the number of points");
    }
    std::priority_queue<Candidate> heap;  // max-heap: worst candidate on top

    auto visit = [&](auto&& self, std::int32_t id) -> void {
        const Node& node = nodes_[static_cast<std::size_t>(id)];
        if (node.left < 0) {
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                const Candidate c{distance_sq(points_[order_[i]], query), order_[i]};
                if (heap.size() < k) {
                    heap.push(c);
                } else if (c < heap.top()) {
                    heap.pop();
                    heap.push(c);
                }
            }
            return;
        }
        const double delta = coord(query, node.axis) - node.split;
        const std::int32_t near = delta < 0.0 ? node.left : node.right;
        const std::int32_t far = delta < 0.0 ? node.right : node.left;
        self(self, near);
        // Equality keeps equidistant points with smaller indices reachable.
        if (heap.size() < k || delta * delta <= heap.top().dist_sq) self(self, far);
    };
    visit(visit, 0);

    std::vector<Neighbor> out(heap.size());
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = {heap.top().index, std::sqrt(heap.top().dist_sq)};
        heap.pop();
    }
    return out;
}

Neighbor KdTree::nearest(Point2 query) const { return nearest(query, 1).front(); }

std::vector<Neighbor> brute_force_nearest(std::span<const Point2> points, Point2 query, std::size_t k) {
    if (k > points.size()) throw std::invalid_argument("brute_force_nearest: k too large");
    std::vector<Candidate> all(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) all[i] = {distance_sq(points[i], query), i};
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
    std::vector<Neighbor> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = {all[i].index, std::sqrt(all[i].dist_sq)};
    return out;
}

}  // namespace mfp
