#include "jagged/matrix.hpp"

#include <algorithm>
#include <string>

#include "jagged/error.hpp"

namespace jagged {

CsrMatrix::CsrMatrix(std::size_t n_rows, std::size_t n_cols,
                     std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx,
                     std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != n_rows_ + 1) {
    throw InvalidMatrixError("row_ptr must have n_rows + 1 entries");
  }
  if (row_ptr_.front() != 0) {
    throw InvalidMatrixError("row_ptr[0] must be 0");
  }
  if (col_idx_.size() != values_.size() || row_ptr_.back() != values_.size()) {
    throw InvalidMatrixError("row_ptr[n_rows], col_idx and values disagree on nnz");
  }
  for (std::size_t i = 0; i < n_rows_; ++i) {
    if (row_ptr_[i + 1] < row_ptr_[i]) {
      throw InvalidMatrixError("row_ptr decreases at row " + std::to_string(i));
    }
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= n_cols_) {
        throw InvalidMatrixError("column index out of range in row " +
                                 std::to_string(i));
      }
      if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1]) {
        throw InvalidMatrixError("columns not strictly increasing in row " +
                                 std::to_string(i));
      }
    }
  }
}

std::size_t CsrMatrix::max_row_length() const noexcept {
  std::size_t m = 0;
  for (std::size_t i = 0; i < n_rows_; ++i) m = std::max(m, row_length(i));
  return m;
}

std::size_t CsrMatrix::first_empty_row() const noexcept {
  for (std::size_t i = 0; i < n_rows_; ++i) {
    if (row_length(i) == 0) return i;
  }
  return n_rows_;
}

CsrMatrix coo_to_csr(const CooMatrix& m) {
  std::vector<std::size_t> row_ptr(m.n_rows + 1, 0);
  for (const auto& e : m.entries) {
    if (e.row >= m.n_rows || e.col >= m.n_cols) {
      throw InvalidMatrixError("entry (" + std::to_string(e.row) + ", " +
                               std::to_string(e.col) + ") out of range");
    }
    ++row_ptr[e.row + 1];
  }
  for (std::size_t i = 0; i < m.n_rows; ++i) row_ptr[i + 1] += row_ptr[i];

  // counting sort by row, then sort each row by column
  std::vector<std::size_t> order(m.entries.size());
  std::vector<std::size_t> next(row_ptr.begin(), row_ptr.end() - 1);
  for (std::size_t k = 0; k < m.entries.size(); ++k) {
    order[next[m.entries[k].row]++] = k;
  }
  std::vector<std::size_t> col_idx(m.entries.size());
  std::vector<double> values(m.entries.size());
  for (std::size_t i = 0; i < m.n_rows; ++i) {
    auto first = order.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
    std::sort(first, last, [&](std::size_t a, std::size_t b) {
      return m.entries[a].col < m.entries[b].col;
    });
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      const auto& e = m.entries[order[k]];
      if (k > row_ptr[i] && e.col == col_idx[k - 1]) {
        throw InvalidMatrixError("duplicate entry (" + std::to_string(e.row) +
                                 ", " + std::to_string(e.col) + ")");
      }
      col_idx[k] = e.col;
      values[k] = e.value;
    }
  }
  return CsrMatrix(m.n_rows, m.n_cols, std::move(row_ptr), std::move(col_idx),
                   std::move(values));
}

CooMatrix csr_to_coo(const CsrMatrix& m) {
  CooMatrix coo{m.n_rows(), m.n_cols(), {}};
  coo.entries.reserve(m.nnz());
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    auto cols = m.row_cols(i);
    auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      coo.entries.push_back({i, cols[k], vals[k]});
    }
  }
  return coo;
}

CsrMatrix identity(std::size_t n) {
  std::vector<std::size_t> row_ptr(n + 1);
  std::vector<std::size_t> col_idx(n);
  for (std::size_t i = 0; i <= n; ++i) row_ptr[i] = i;
  for (std::size_t i = 0; i < n; ++i) col_idx[i] = i;
  return CsrMatrix(n, n, std::move(row_ptr), std::move(col_idx),
                   std::vector<double>(n, 1.0));
}

}  // namespace jagged
