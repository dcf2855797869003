#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace mfp {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

/// Compressed sparse row matrix with sorted column indices in every row.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    /// Duplicates are summed; entries are ordered by (row, col).
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return values_.size(); }

    std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
    std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Entry (i, j); zero when not stored.
    double at(std::size_t i, std::size_t j) const noexcept;

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> operator*(std::span<const double> x) const;

    double norm1() const noexcept;
    SparseMatrix transpose() const;
    std::vector<Triplet> triplets() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

/// Debug dump: one `row col value` line per stored entry.
void write_triplets(std::ostream& os, const SparseMatrix& m);

}  // namespace mfp
