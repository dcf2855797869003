#include "mfp/params.hpp"

#include <cmath>
#include <stdexcept>

namespace mfp {

void BasketParams::validate() const {
    if (!(T > 0.0)) throw std::invalid_argument("basket: maturity must be positive");
    if (!(K > 0.0)) throw std::invalid_argument("basket: strike must be positive");
    for (double s : sigma) {
        if (!(s > 0.0)) throw std::invalid_argument("basket: volatilities must be positive");
    }
    if (rho[0][1] != rho[1][0]) throw std::invalid_argument("basket: correlation matrix must be symmetric");
    if (rho[0][0] != 1.0 || rho[1][1] != 1.0) throw std::invalid_argument("basket: correlation diagonal must be 1");
    if (std::abs(rho[0][1]) > 1.0) throw std::invalid_argument("basket: correlation matrix must be PSD");
}

void HestonParams::validate() const {
    if (!(kappa > 0.0 && eta > 0.0 && sigma > 0.0)) {
        throw std::invalid_argument("heston: kappa, eta and sigma must be positive");
    }
    if (std::abs(rho) > 1.0) throw std::invalid_argument("heston: |rho| must not exceed 1");
    if (!(T > 0.0)) throw std::invalid_argument("heston: maturity must be positive");
    if (!(K > 0.0)) throw std::invalid_argument("heston: strike must be positive");
}

}  // namespace mfp
