#include "mfp/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace mfp {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row < b.row || (a.row == b.row && a.col < b.col);
    });
    SparseMatrix m(rows, cols);
    m.col_idx_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    for (std::size_t k = 0; k < triplets.size(); ++k) {
        const Triplet& t = triplets[k];
        if (t.row >= rows || t.col >= cols) throw std::out_of_range("SparseMatrix: triplet out of range");
        if (k > 0 && triplets[k - 1].row == t.row && triplets[k - 1].col == t.col) {
            m.values_.back() += t.value;
            continue;
        }
        m.col_idx_.push_back(t.col);
        m.values_.push_back(t.value);
        ++m.row_ptr_[t.row + 1];
    }
    for (std::size_t i = 0; i < rows; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
    return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    std::vector<Triplet> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = {i, i, 1.0};
    return from_triplets(n, n, std::move(t));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const noexcept {
    const auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
    const auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != cols_ || y.size() != rows_) throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
    for (std::size_t i = 0; i < rows_; ++i) {
        double sum = 0.0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) sum += values_[k] * x[col_idx_[k]];
        y[i] = sum;
    }
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const {
    std::vector<double> y(rows_);
    multiply(x, y);
    return y;
}

double SparseMatrix::norm1() const noexcept {
    std::vector<double> colsum(cols_, 0.0);
    for (std::size_t k = 0; k < values_.size(); ++k) colsum[col_idx_[k]] += std::abs(values_[k]);
    return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) t.push_back({col_idx_[k], i, values_[k]});
    }
    return from_triplets(cols_, rows_, std::move(t));
}

std::vector<Triplet> SparseMatrix::triplets() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) t.push_back({i, col_idx_[k], values_[k]});
    }
    return t;
}

void write_triplets(std::ostream& os, const SparseMatrix& m) {
    const auto old = os.precision(17);
    for (const Triplet& t : m.triplets()) os << t.row << ' ' << t.col << ' ' << t.value << '\n';
    os.precision(old);
}

}  // namespace mfp
