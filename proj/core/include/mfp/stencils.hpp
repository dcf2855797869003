#pragma once

#include "mfp/geometry.hpp"
#include "mfp/nodegen.hpp"

#include <cstddef>
#include <vector>

namespace mfp {

/// A node and its n-1 nearest neighbors. `members[0]` is the center.
struct Stencil {
    std::size_t center = 0;
    std::vector<std::size_t> members;
    Point2 shift;        // center coordinates
    double scale = 0.0;  // largest member distance to the center
};

/// Stencils for every node that needs an operator row (all non-Dirichlet
/// nodes), in increasing node order. Ties in distance go to the smaller index.
std::vector<Stencil> make_stencils(const NodeLayout& layout, std::size_t n);

}  // namespace mfp
