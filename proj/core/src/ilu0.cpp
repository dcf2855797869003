#include "mfp/linsolve.hpp"

#include <cmath>
#include <limits>

namespace mfp {

Ilu0::Ilu0(const SparseMatrix& a) : lu_(a), diag_(a.rows()), lu_values_(a.values().begin(), a.values().end()) {
    if (a.rows() != a.cols()) throw std::invalid_argument("Ilu0: matrix must be square");
    const std::size_t n = a.rows();
    const auto rp = lu_.row_ptr();
    const auto ci = lu_.col_idx();
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> pos(n, kNone);

    for (std::size_t i = 0; i < n; ++i) {
        diag_[i] = kNone;
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            pos[ci[k]] = k;
            if (ci[k] == i) diag_[i] = k;
        }
        if (diag_[i] == kNone) {
            throw std::runtime_error("Ilu0: row " + std::to_string(i) + " has no stored diagonal");
        }
        for (std::size_t kk = rp[i]; kk < rp[i + 1] && ci[kk] < i; ++kk) {
            const std::size_t k = ci[kk];
            const double lik = lu_values_[kk] / lu_values_[diag_[k]];
            lu_values_[kk] = lik;
            for (std::size_t kj = diag_[k] + 1; kj < rp[k + 1]; ++kj) {
                const std::size_t p = pos[ci[kj]];
                if (p != kNone) lu_values_[p] -= lik * lu_values_[kj];
            }
        }
        const double pivot = lu_values_[diag_[i]];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw std::runtime_error("Ilu0: zero or non-finite pivot in row " + std::to_string(i));
        }
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) pos[ci[k]] = kNone;
    }
}

void Ilu0::apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t n = size();
    const auto rp = lu_.row_ptr();
    const auto ci = lu_.col_idx();
    for (std::size_t i = 0; i < n; ++i) {
        double s = in[i];
        for (std::size_t k = rp[i]; k < diag_[i]; ++k) s -= lu_values_[k] * out[ci[k]];
        out[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = out[i];
        for (std::size_t k = diag_[i] + 1; k < rp[i + 1]; ++k) s -= lu_values_[k] * out[ci[k]];
        out[i] = s / lu_values_[diag_[i]];
    }
}

}  // namespace mfp
