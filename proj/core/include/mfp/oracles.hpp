#pragma once

#include "mfp/geometry.hpp"
#include "mfp/params.hpp"

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Reference prices computed without any of the RBF-FD machinery.

namespace mfp {

/// Raised when an oracle's internal two-resolution check fails.
class OracleError : public std::runtime_error {
public:
    OracleError(const std::string& what, double first, double second)
        : std::runtime_error(what), first_value(first), second_value(second) {}
    double first_value;
    double second_value;
};

struct ReferencePrice {
    Point2 point;       // price units
    double value = 0.0;
    double accuracy = 0.0;
    std::string method;
};

double bs_call_1d(double s, double K, double r, double sigma, double T);
double bs_put_1d(double s, double K, double r, double sigma, double T);

/// Nodes and weights of the n-point Gauss-Hermite rule for E[f(Z)], Z ~ N(0,1).
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;  // sum to 1
};
GaussHermite gauss_hermite(std::size_t n);

/// Basket call at one quadrature resolution: the expectation over Z2 given Z1
/// is a Black-Scholes formula, the remaining expectation over Z1 uses n
/// Gauss-Hermite nodes. Perfect correlation is integrated in closed form.
double basket_call_quadrature(const BasketParams& params, Point2 s, std::size_t n);

/// 200 vs 400 nodes, agreeing to 1e-7 relative.
ReferencePrice basket_call_reference(const BasketParams& params, Point2 s);
/// European basket put by parity from the call reference.
ReferencePrice basket_put_reference(const BasketParams& params, Point2 s);

struct HestonQuadrature {
    double upper = 0.0;  // 0: integrate to infinity
    double tolerance = 1e-12;
    unsigned max_depth = 15;
};

/// Characteristic function of log(S_T / S_0).
struct HestonCf {
    HestonParams params;
    double v0 = 0.0;
    std::complex<double> operator()(std::complex<double> u) const;
};

/// Call by the single-integral form along Im u = -1/2.
double heston_call_lewis(const HestonParams& params, double s, double v0, const HestonQuadrature& q);
/// Put by the two-probability form.
double heston_put_probabilities(const HestonParams& params, double s, double v0, const HestonQuadrature& q);

/// Two truncation/tolerance settings agreeing to 1e-6; parity with the
/// independently computed put holds to 1e-8.
ReferencePrice heston_call_reference(const HestonParams& params, double s, double v0);

struct AmericanFdOptions {
    std::size_t coarse_intervals = 320;   // per leg
    std::size_t fine_intervals = 640;
    std::size_t coarse_steps = 100;
    std::size_t fine_steps = 200;
    double omega = 1.6;
    double tolerance = 1e-9;
    std::size_t max_sweeps = 20000;
    bool early_exercise = true;
};

/// Put values on a uniform finite-difference grid over the basket triangle,
/// BDF2 in time after one implicit Euler step, each step solved by projected
/// SOR. Points must be grid nodes.
std::vector<double> basket_put_fd(const BasketParams& params, std::span<const Point2> points,
                                  std::size_t intervals, std::size_t steps, const AmericanFdOptions& options);

/// Richardson extrapolation (4 fine - coarse) / 3 of two grids that halve both
/// h and the time step; the quoted accuracy |fine - coarse| / 3 is the
/// estimated error of the fine grid alone.
std::vector<ReferencePrice> american_put_reference(const BasketParams& params, std::span<const Point2> points,
                                                   const AmericanFdOptions& options = {});

/// CSV `model,point,value,accuracy,method`.
void write_reference_table(std::ostream& os, const std::string& model, std::span<const ReferencePrice> refs);

}  // namespace mfp
