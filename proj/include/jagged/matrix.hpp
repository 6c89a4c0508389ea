#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jagged {

struct CooEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;

  friend bool operator==(const CooEntry&, const CooEntry&) = default;
};

/// Coordinate-list staging form. Entries may appear in any order.
struct CooMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<CooEntry> entries;
};

/// Compressed sparse row storage.
///
/// Column indices inside each row are strictly increasing. Rows without
/// entries are allowed here; the ELLPACK family builders reject them.
class CsrMatrix {
 public:
  CsrMatrix() : row_ptr_{0} {}

  /// Takes ownership of raw CSR arrays and validates every invariant.
  CsrMatrix(std::size_t n_rows, std::size_t n_cols,
            std::vector<std::size_t> row_ptr, std::vector<std::size_t> col_idx,
            std::vector<double> values);

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values() const noexcept { return values_; }

  std::size_t row_length(std::size_t row) const {
    return row_ptr_[row + 1] - row_ptr_[row];
  }
  std::span<const std::size_t> row_cols(std::size_t row) const {
    return std::span(col_idx_).subspan(row_ptr_[row], row_length(row));
  }
  std::span<const double> row_values(std::size_t row) const {
    return std::span(values_).subspan(row_ptr_[row], row_length(row));
  }

  std::size_t max_row_length() const noexcept;
  /// Index of the first row without entries, or n_rows() if there is none.
  std::size_t first_empty_row() const noexcept;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// Sorts entries into CSR order. Throws InvalidMatrixError on duplicate
/// (row, col) pairs or out-of-range indices.
CsrMatrix coo_to_csr(const CooMatrix& m);

/// Expands CSR back into row-major ordered coordinates.
CooMatrix csr_to_coo(const CsrMatrix& m);

/// Identity matrix of dimension n.
CsrMatrix identity(std::size_t n);

}  // namespace jagged
