#include "mfp/rbffd.hpp"

#include <cmath>

namespace mfp {

namespace {

double ipow(double x, int n) noexcept {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

OperatorCoeffs OperatorCoeffs::rescaled(double h) const noexcept {
    OperatorCoeffs out = *this;
    const double h2 = h * h;
    for (auto& row : out.a) {
        for (double& v : row) v /= h2;
    }
    for (double& v : out.b) v /= h;
    return out;
}

PhsBasis::PhsBasis(int degree) : q(degree) {
    if (degree < 3) throw std::invalid_argument("PhsBasis: degree must be at least 3");
    if (degree % 2 == 0 && degree < 4) throw std::invalid_argument("PhsBasis: even degree must be at least 4");
}

double PhsBasis::value(double r) const noexcept {
    if (r <= 0.0) return 0.0;
    if (q % 2 == 1) return ipow(r, q);
    return ipow(r, q) * std::log(r);
}

double PhsBasis::apply(Point2 center, Point2 node, const OperatorCoeffs& k) const noexcept {
    const Point2 d = center - node;
    const double r = norm(d);
    if (r == 0.0) return 0.0;  // every derivative term vanishes for q >= 3; phi(0) = 0
    // phi_k = g d_k and phi_kl = g delta_kl + h d_k d_l.
    double g;
    double h;
    if (q % 2 == 1) {
        g = q * ipow(r, q - 2);
        h = q * (q - 2) * std::pow(r, q - 4);
    } else {
        const double lr = std::log(r);
        g = ipow(r, q - 2) * (q * lr + 1.0);
        h = ipow(r, q - 4) * (q * (q - 2) * lr + 2.0 * q - 2.0);
    }
    const double dd[2] = {d.x, d.y};
    double second = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) second += k.a[a][b] * ((a == b ? g : 0.0) + h * dd[a] * dd[b]);
    }
    const double first = k.b[0] * g * d.x + k.b[1] * g * d.y;
    return second + first + k.c * value(r);
}

PolySpace::PolySpace(int degree) : p(degree) {
    if (degree < 0) throw std::invalid_argument("PolySpace: degree must be non-negative");
}

std::array<int, 2> PolySpace::exponents(std::size_t k) const noexcept {
    int d = 0;
    std::size_t first = 0;
    while (first + static_cast<std::size_t>(d + 1) <= k) {
        first += static_cast<std::size_t>(d + 1);
        ++d;
    }
    const int offset = static_cast<int>(k - first);
    return {d - offset, offset};
}

double PolySpace::value(std::size_t k, Point2 x) const noexcept {
    const auto [i, j] = exponents(k);
    return ipow(x.x, i) * ipow(x.y, j);
}

double PolySpace::apply(std::size_t k, Point2 x, const OperatorCoeffs& c) const noexcept {
    const auto [i, j] = exponents(k);
    double out = c.c * ipow(x.x, i) * ipow(x.y, j);
    if (i >= 1) out += c.b[0] * i * ipow(x.x, i - 1) * ipow(x.y, j);
    if (j >= 1) out += c.b[1] * j * ipow(x.x, i) * ipow(x.y, j - 1);
    if (i >= 2) out += c.a[0][0] * i * (i - 1) * ipow(x.x, i - 2) * ipow(x.y, j);
    if (j >= 2) out += c.a[1][1] * j * (j - 1) * ipow(x.x, i) * ipow(x.y, j - 2);
    if (i >= 1 && j >= 1) out += (c.a[0][1] + c.a[1][0]) * i * j * ipow(x.x, i - 1) * ipow(x.y, j - 1);
    return out;
}

double phs_value(double r, int q) { return PhsBasis(q).value(r); }

double phs_operator_apply(Point2 center, Point2 node, const OperatorCoeffs& coeffs, int q) {
    return PhsBasis(q).apply(center, node, coeffs);
}

std::vector<double> monomial_operator_apply(Point2 center, const OperatorCoeffs& coeffs, int p) {
    const PolySpace poly(p);
    std::vector<double> out(poly.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = poly.apply(k, center, coeffs);
    return out;
}

}  // namespace mfp
