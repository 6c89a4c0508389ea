#include "jagged/formats.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "jagged/error.hpp"

namespace jagged {

namespace {

void check_source(const CsrMatrix& m, const BuildOptions& opts) {
  if (opts.warp_size == 0) {
    throw InvalidMatrixError("warp size / block rows must be at least 1");
  }
  if (m.n_cols() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidMatrixError("column count exceeds 32-bit index range");
  }
  if (!opts.allow_empty_rows) {
    if (auto row = m.first_empty_row(); row != m.n_rows()) {
      throw EmptyRowError(row);
    }
  }
}

}  // namespace

EllpackMatrix EllpackMatrix::from_csr(const CsrMatrix& m,
                                      const BuildOptions& opts) {
  check_source(m, opts);
  EllpackMatrix e;
  e.n_rows_ = m.n_rows();
  e.n_cols_ = m.n_cols();
  e.warp_size_ = opts.warp_size;
  e.n_rows_padded_ = round_up(m.n_rows(), opts.warp_size);
  e.width_ = m.max_row_length();
  e.nnz_ = m.nnz();
  e.values_.assign(e.n_rows_padded_ * e.width_, 0.0);
  e.col_idx_.assign(e.n_rows_padded_ * e.width_, 0);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    auto cols = m.row_cols(i);
    auto vals = m.row_values(i);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      e.values_[e.slot(i, j)] = vals[j];
      e.col_idx_[e.slot(i, j)] = static_cast<std::uint32_t>(cols[j]);
    }
  }
  return e;
}

EllpackRMatrix EllpackRMatrix::from_csr(const CsrMatrix& m,
                                        const BuildOptions& opts) {
  EllpackRMatrix r;
  r.base_ = EllpackMatrix::from_csr(m, opts);
  r.rowmax_.assign(r.base_.n_rows_padded(), 0);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    r.rowmax_[i] = static_cast<std::uint32_t>(m.row_length(i));
  }
  return r;
}

PjdsMatrix PjdsMatrix::from_csr(const CsrMatrix& m, const BuildOptions& opts) {
  check_source(m, opts);
  const std::size_t n = m.n_rows();
  const std::size_t br = opts.warp_size;

  PjdsMatrix p;
  p.n_rows_ = n;
  p.n_cols_ = m.n_cols();
  p.block_rows_ = br;
  p.n_rows_padded_ = round_up(n, br);
  p.nnz_ = m.nnz();

  // sort
  p.permutation_.resize(n);
  std::iota(p.permutation_.begin(), p.permutation_.end(), std::size_t{0});
  std::stable_sort(p.permutation_.begin(), p.permutation_.end(),
                   [&](std::size_t a, std::size_t b) {
                     return m.row_length(a) > m.row_length(b);
                   });
  p.rowmax_.assign(p.n_rows_padded_, 0);
  for (std::size_t i = 0; i < n; ++i) {
    p.rowmax_[i] = static_cast<std::uint32_t>(m.row_length(p.permutation_[i]));
  }

  // pad: each block extends to its first (longest) row
  const std::size_t n_blocks = p.n_rows_padded_ / br;
  p.block_max_.resize(n_blocks);
  for (std::size_t b = 0; b < n_blocks; ++b) p.block_max_[b] = p.rowmax_[b * br];

  const std::size_t width = n_blocks == 0 ? 0 : p.block_max_.front();
  p.col_start_.assign(width + 1, 0);
  std::size_t active_blocks = n_blocks;
  for (std::size_t j = 0; j < width; ++j) {
    while (active_blocks > 0 && p.block_max_[active_blocks - 1] <= j) {
      --active_blocks;
    }
    p.col_start_[j + 1] = p.col_start_[j] + active_blocks * br;
  }

  p.values_.assign(p.col_start_.back(), 0.0);
  p.col_idx_.assign(p.col_start_.back(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto old = p.permutation_[i];
    auto cols = m.row_cols(old);
    auto vals = m.row_values(old);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto at = p.col_start_[j] + i;
      p.values_[at] = vals[j];
      p.col_idx_[at] = static_cast<std::uint32_t>(cols[j]);
    }
  }
  return p;
}

EllpackMatrix build_ellpack(const CsrMatrix& m, std::size_t warp_size) {
  return EllpackMatrix::from_csr(m, {warp_size, false});
}

EllpackRMatrix build_ellpack_r(const CsrMatrix& m, std::size_t warp_size) {
  return EllpackRMatrix::from_csr(m, {warp_size, false});
}

PjdsMatrix build_pjds(const CsrMatrix& m, std::size_t block_rows) {
  return PjdsMatrix::from_csr(m, {block_rows, false});
}

}  // namespace jagged
