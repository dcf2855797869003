#include "mfp/stencils.hpp"

#include "mfp/kdtree.hpp"

#include <stdexcept>
#include <string>

namespace mfp {

std::vector<Stencil> make_stencils(const NodeLayout& layout, std::size_t n) {
    if (n == 0) throw std::invalid_argument("make_stencils: stencil size must be positive");
    if (n > layout.size()) {
        throw std::invalid_argument("make_stencils: stencil size " + std::to_string(n) +
                                    " exceeds node count " + std::to_string(layout.size()));
    }
    const KdTree tree(layout.nodes);
    std::vector<Stencil> out;
    out.reserve(layout.size());
    for (std::size_t j = 0; j < layout.size(); ++j) {
        if (is_dirichlet(layout.roles[j])) continue;
        Stencil s;
        s.center = j;
        s.shift = layout.nodes[j];
        const auto nbs = tree.nearest(layout.nodes[j], n);
        s.members.reserve(n);
        s.members.push_back(j);
        for (const Neighbor& nb : nbs) {
            if (nb.index == j) continue;
            if (s.members.size() == n) break;
            s.members.push_back(nb.index);
            s.scale = std::max(s.scale, nb.distance);
        }
        if (n > 1 && !(s.scale > 0.0)) {
            throw std::runtime_error("make_stencils: duplicate nodes around node " + std::to_string(j));
        }
        if (n == 1) s.scale = 1.0;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace mfp
