#include "mfp/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

namespace mfp {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// E[max(F e^{sW - s^2/2} - k, 0)] for W ~ N(0,1), undiscounted.
double black_undiscounted(double F, double k, double s) {
    if (k <= 0.0) return F - k;
    if (s <= 0.0) return std::max(F - k, 0.0);
    const double d1 = (std::log(F / k) + 0.5 * s * s) / s;
    return F * norm_cdf(d1) - k * norm_cdf(d1 - s);
}

// Integral of c e^{g z} phi(z) over (lo, hi).
double lognormal_piece(double c, double g, double lo, double hi) {
    return c * std::exp(0.5 * g * g) * (norm_cdf(hi - g) - norm_cdf(lo - g));
}

// Perfectly correlated basket: the payoff depends on one normal factor and
// f(z) = a0 e^{alpha z} + b0 e^{beta z} - K is convex in z.
double basket_call_degenerate(double a0, double alpha, double b0, double beta, double K) {
    auto f = [&](double z) { return a0 * std::exp(alpha * z) + b0 * std::exp(beta * z) - K; };
    const double L = 40.0;
    // Minimizer of the convex function by golden section.
    double lo = -L, hi = L;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200; ++it) {
        const double m1 = hi - phi * (hi - lo);
        const double m2 = lo + phi * (hi - lo);
        if (f(m1) < f(m2)) hi = m2; else lo = m1;
    }
    const double zmin = 0.5 * (lo + hi);
    auto whole = [&](double l, double h) {
        return lognormal_piece(a0, alpha, l, h) + lognormal_piece(b0, beta, l, h) - K * (norm_cdf(h) - norm_cdf(l));
    };
    const double inf = std::numeric_limits<double>::infinity();
    if (f(zmin) >= 0.0) return whole(-inf, inf);
    auto root = [&](double a, double b) {  // f(a) < 0 <= f(b) or reverse
        const bool rising = f(b) >= 0.0;
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (a + b);
            if ((f(m) >= 0.0) == rising) b = m; else a = m;
        }
        return 0.5 * (a + b);
    };
    double total = 0.0;
    if (f(L) > 0.0) total += whole(root(zmin, L), inf);
    if (f(-L) > 0.0) total += whole(-inf, root(zmin, -L));
    return total;
}

template <class F>
double integrate(F f, const HestonQuadrature& q) {
    const double upper = q.upper > 0.0 ? q.upper : std::numeric_limits<double>::infinity();
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, upper, q.max_depth, q.tolerance,
                                                                         &err);
}

}  // namespace

double bs_call_1d(double s, double K, double r, double sigma, double T) {
    const double df = std::exp(-r * T);
    return df * black_undiscounted(s / df, K, sigma * std::sqrt(T));
}

double bs_put_1d(double s, double K, double r, double sigma, double T) {
    return bs_call_1d(s, K, r, sigma, T) - s + K * std::exp(-r * T);
}

GaussHermite gauss_hermite(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_hermite: need at least one node");
    // Golub-Welsch on the Jacobi matrix of the probabilists' Hermite polynomials.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 1 ? n - 1 : 0));
    for (Eigen::Index k = 0; k < sub.size(); ++k) sub(k) = std::sqrt(static_cast<double>(k + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    GaussHermite out;
    out.nodes.resize(n);
    out.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.nodes[k] = es.eigenvalues()(static_cast<Eigen::Index>(k));
        const double v = es.eigenvectors()(0, static_cast<Eigen::Index>(k));
        out.weights[k] = v * v;
    }
    return out;
}

double basket_call_quadrature(const BasketParams& p, Point2 s, std::size_t n) {
    p.validate();
    const double rT = p.r * p.T;
    const double sq = std::sqrt(p.T);
    const double rho = p.rho[0][1];
    const double mu1 = rT - 0.5 * p.sigma[0] * p.sigma[0] * p.T;
    const double mu2 = rT - 0.5 * p.sigma[1] * p.sigma[1] * p.T;
    const double a0 = 0.5 * s.x * std::exp(mu1);
    const double alpha = p.sigma[0] * sq;
    const double b0 = 0.5 * s.y * std::exp(mu2);
    const double beta = rho * p.sigma[1] * sq;
    const double df = std::exp(-rT);
    if (std::abs(rho) == 1.0) return df * basket_call_degenerate(a0, alpha, b0, beta, p.K);

    // Given Z1 = z, the second asset is lognormal with the residual volatility.
    const double resid = p.sigma[1] * sq * std::sqrt(1.0 - rho * rho);
    const GaussHermite gh = gauss_hermite(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (gh.weights[k] == 0.0) continue;
        const double z = gh.nodes[k];
        const double A = a0 * std::exp(alpha * z);
        const double FB = b0 * std::exp(beta * z + 0.5 * resid * resid);
        sum += gh.weights[k] * black_undiscounted(FB, p.K - A, resid);
    }
    return df * sum;
}

ReferencePrice basket_call_reference(const BasketParams& params, Point2 s) {
    const double v1 = basket_call_quadrature(params, s, 200);
    const double v2 = basket_call_quadrature(params, s, 400);
    const double diff = std::abs(v2 - v1);
    if (diff > 1e-7 * std::max(std::abs(v2), 1e-300) && diff > 1e-14) {
        throw OracleError("basket call quadrature: 200 and 400 node values disagree", v1, v2);
    }
    const bool closed = std::abs(params.rho[0][1]) == 1.0;
    return {s, v2, diff, closed ? "closed form (perfect correlation)" : "conditional Black-Scholes + Gauss-Hermite 200/400"};
}

ReferencePrice basket_put_reference(const BasketParams& params, Point2 s) {
    ReferencePrice c = basket_call_reference(params, s);
    c.value = c.value - 0.5 * (s.x + s.y) + params.K * std::exp(-params.r * params.T);
    c.method += " + parity";
    return c;
}

std::complex<double> HestonCf::operator()(std::complex<double> u) const {
    using C = std::complex<double>;
    const HestonParams& p = params;
    const C i(0.0, 1.0);
    const double s2 = p.sigma * p.sigma;
    const C xi = p.kappa - p.rho * p.sigma * i * u;
    const C d = std::sqrt(xi * xi + s2 * (i * u + u * u));
    // (xi - d) / sigma^2 without cancellation, so small sigma stays accurate.
    const C xm = -(i * u + u * u) / (xi + d);
    const C g = s2 * xm / (xi + d);
    const C e = std::exp(-d * p.T);
    // log((1 - g e) / (1 - g)) / sigma^2 = log1p(z) / sigma^2, z = g (1 - e) / (1 - g).
    const C z_over = (xm / (xi + d)) * (1.0 - e) / (1.0 - g);
    const C w = 1.0 + s2 * z_over;
    const C log1p_ratio = w == C(1.0) ? C(1.0) : std::log(w) / (w - 1.0);
    const C A = p.kappa * p.eta * (xm * p.T - 2.0 * z_over * log1p_ratio);
    const C B = xm * (1.0 - e) / (1.0 - g * e);
    return std::exp(i * u * p.r * p.T + A + B * v0);
}

double heston_call_lewis(const HestonParams& params, double s, double v0, const HestonQuadrature& q) {
    params.validate();
    if (!(s > 0.0 && v0 > 0.0)) throw std::invalid_argument("heston oracle: s and v0 must be positive");
    const HestonCf cf{params, v0};
    const double k = std::log(params.K / s);
    auto integrand = [&](double u) {
        const std::complex<double> z(u, -0.5);
        const auto val = std::exp(std::complex<double>(0.0, -u * k)) * cf(z);
        return val.real() / (u * u + 0.25);
    };
    const double I = integrate(integrand, q);
    return s - std::sqrt(s * params.K) * std::exp(-params.r * params.T) * I / std::numbers::pi;
}

double heston_put_probabilities(const HestonParams& params, double s, double v0, const HestonQuadrature& q) {
    params.validate();
    if (!(s > 0.0 && v0 > 0.0)) throw std::invalid_argument("heston oracle: s and v0 must be positive");
    const HestonCf cf{params, v0};
    const double k = std::log(params.K / s);
    const double growth = std::exp(params.r * params.T);
    auto prob = [&](bool share) {
        auto integrand = [&](double u) {
            const std::complex<double> z = share ? std::complex<double>(u, -1.0) : std::complex<double>(u, 0.0);
            auto val = std::exp(std::complex<double>(0.0, -u * k)) * cf(z) / std::complex<double>(0.0, u);
            if (share) val /= growth;
            return val.real();
        };
        return 0.5 + integrate(integrand, q) / std::numbers::pi;
    };
    const double P1 = prob(true);
    const double P2 = prob(false);
    return params.K * std::exp(-params.r * params.T) * (1.0 - P2) - s * (1.0 - P1);
}

ReferencePrice heston_call_reference(const HestonParams& params, double s, double v0) {
    const HestonQuadrature truncated{200.0, 1e-10, 10};
    const HestonQuadrature full{0.0, 1e-13, 15};
    const double c1 = heston_call_lewis(params, s, v0, truncated);
    const double c2 = heston_call_lewis(params, s, v0, full);
    if (!(std::abs(c1 - c2) <= 1e-6)) {
        throw OracleError("heston call: quadrature settings disagree", c1, c2);
    }
    const double put = heston_put_probabilities(params, s, v0, full);
    const double parity = c2 - put - (s - params.K * std::exp(-params.r * params.T));
    if (!(std::abs(parity) <= 1e-8)) {
        throw OracleError("heston call: put-call parity violated between integral forms", c2, put);
    }
    return {{s, v0}, c2, std::abs(c1 - c2), "characteristic function single integral Gauss-Kronrod"};
}

void write_reference_table(std::ostream& os, const std::string& model, std::span<const ReferencePrice> refs) {
    os << "model,point,value,accuracy,method\n";
    char buf[160];
    for (const ReferencePrice& r : refs) {
        std::snprintf(buf, sizeof buf, "%s,%.17g %.17g,%.17g,%.17g,", model.c_str(), r.point.x, r.point.y, r.value,
                      r.accuracy);
        os << buf << r.method << '\n';
    }
}

}  // namespace mfp
