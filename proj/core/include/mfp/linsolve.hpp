#pragma once

#include "mfp/sparse.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfp {

/// Raised when an iterative solve fails to reach its tolerance.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), residual_history(std::move(history)) {}

    std::vector<double> residual_history;
};

/// Zero-fill incomplete LU factorization on the sparsity pattern of A.
class Ilu0 {
public:
    /// Requires a stored diagonal in every row; throws naming the row when a
    /// pivot vanishes.
    explicit Ilu0(const SparseMatrix& a);

    /// out = (LU)^{-1} in
    void apply(std::span<const double> in, std::span<double> out) const;
    std::size_t size() const noexcept { return lu_.rows(); }

private:
    SparseMatrix lu_;
    std::vector<std::size_t> diag_;
    std::vector<double> lu_values_;
};

struct GmresOptions {
    double tolerance = 1e-8;        // on ||b - A x|| / ||b||
    std::size_t restart = 50;
    std::size_t max_iterations = 200;
};

struct GmresResult {
    std::size_t iterations = 0;
    double relative_residual = 0.0;
    std::vector<double> residual_history;  // relative residual after each inner iteration
};

/// Right-preconditioned restarted GMRES. `x` holds the initial guess on entry
/// and the solution on exit. Throws SolverError when the iteration cap is hit.
GmresResult gmres(const SparseMatrix& a, const Ilu0& preconditioner, std::span<const double> b,
                  std::span<double> x, const GmresOptions& options = {});

/// Estimate of the 1-norm condition number ||A||_1 ||A^{-1}||_1 using a
/// block Hager/Higham estimator (four columns) for ||A^{-1}||_1 on top of a
/// sparse LU factorization.
double condition_estimate_1norm(const SparseMatrix& a);

}  // namespace mfp
