#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jagged/matrix.hpp"

namespace jagged {

inline constexpr std::size_t default_warp_size = 32;

struct BuildOptions {
  /// Rows per warp (ELLPACK family) or per block (pJDS, b_r).
  std::size_t warp_size = default_warp_size;
  /// Builders reject rows without non-zeros unless this is set. Split
  /// local/nonlocal blocks of a distributed matrix need it.
  bool allow_empty_rows = false;
};

/// Rectangular column-major storage: slot (i, j) lives at
/// j * n_rows_padded() + i. Padding slots hold value 0.0 and column 0.
class EllpackMatrix {
 public:
  EllpackMatrix() = default;
  static EllpackMatrix from_csr(const CsrMatrix& m, const BuildOptions& opts);

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  std::size_t n_rows_padded() const noexcept { return n_rows_padded_; }
  std::size_t warp_size() const noexcept { return warp_size_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t nnz() const noexcept { return nnz_; }
  std::size_t stored_entries() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint32_t> col_idx() const noexcept { return col_idx_; }

  std::size_t slot(std::size_t row, std::size_t j) const noexcept {
    return j * n_rows_padded_ + row;
  }

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::size_t n_rows_padded_ = 0;
  std::size_t warp_size_ = default_warp_size;
  std::size_t width_ = 0;
  std::size_t nnz_ = 0;
  std::vector<double> values_;
  std::vector<std::uint32_t> col_idx_;
};

/// ELLPACK storage plus the per-row non-zero count used to skip padding.
class EllpackRMatrix {
 public:
  EllpackRMatrix() = default;
  static EllpackRMatrix from_csr(const CsrMatrix& m, const BuildOptions& opts);

  const EllpackMatrix& ellpack() const noexcept { return base_; }
  std::size_t n_rows() const noexcept { return base_.n_rows(); }
  std::size_t n_cols() const noexcept { return base_.n_cols(); }
  std::size_t n_rows_padded() const noexcept { return base_.n_rows_padded(); }
  std::size_t warp_size() const noexcept { return base_.warp_size(); }
  std::size_t width() const noexcept { return base_.width(); }
  std::size_t nnz() const noexcept { return base_.nnz(); }
  std::size_t stored_entries() const noexcept { return base_.stored_entries(); }
  std::span<const double> values() const noexcept { return base_.values(); }
  std::span<const std::uint32_t> col_idx() const noexcept { return base_.col_idx(); }
  /// Length n_rows_padded(); zero for warp padding rows.
  std::span<const std::uint32_t> rowmax() const noexcept { return rowmax_; }

 private:
  EllpackMatrix base_;
  std::vector<std::uint32_t> rowmax_;
};

/// Padded jagged diagonals storage.
///
/// Rows are sorted by descending length (ties keep their original order),
/// grouped into blocks of block_rows() consecutive rows, and every block is
/// padded to its longest row. Jagged column j spans the first
/// col_start()[j+1] - col_start()[j] permuted rows; entry (i, j) lives at
/// col_start()[j] + i. The row count is padded to a multiple of
/// block_rows() with zero-length rows.
class PjdsMatrix {
 public:
  PjdsMatrix() = default;
  static PjdsMatrix from_csr(const CsrMatrix& m, const BuildOptions& opts);

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  std::size_t n_rows_padded() const noexcept { return n_rows_padded_; }
  std::size_t block_rows() const noexcept { return block_rows_; }
  std::size_t n_blocks() const noexcept { return block_max_.size(); }
  std::size_t width() const noexcept { return col_start_.size() - 1; }
  std::size_t nnz() const noexcept { return nnz_; }
  std::size_t stored_entries() const noexcept { return col_start_.back(); }

  /// permutation()[new_row] = original row.
  std::span<const std::size_t> permutation() const noexcept { return permutation_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint32_t> col_idx() const noexcept { return col_idx_; }
  /// width() + 1 offsets; the last one equals stored_entries().
  std::span<const std::size_t> col_start() const noexcept { return col_start_; }
  /// True row lengths in permuted order, length n_rows_padded().
  std::span<const std::uint32_t> rowmax() const noexcept { return rowmax_; }
  /// Longest row of every block.
  std::span<const std::uint32_t> block_max() const noexcept { return block_max_; }

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::size_t n_rows_padded_ = 0;
  std::size_t block_rows_ = default_warp_size;
  std::size_t nnz_ = 0;
  std::vector<std::size_t> permutation_;
  std::vector<double> values_;
  std::vector<std::uint32_t> col_idx_;
  std::vector<std::size_t> col_start_{0};
  std::vector<std::uint32_t> rowmax_;
  std::vector<std::uint32_t> block_max_;
};

EllpackMatrix build_ellpack(const CsrMatrix& m,
                            std::size_t warp_size = default_warp_size);
EllpackRMatrix build_ellpack_r(const CsrMatrix& m,
                               std::size_t warp_size = default_warp_size);
PjdsMatrix build_pjds(const CsrMatrix& m,
                      std::size_t block_rows = default_warp_size);

/// n rounded up to a multiple of `multiple`.
constexpr std::size_t round_up(std::size_t n, std::size_t multiple) noexcept {
  return (n + multiple - 1) / multiple * multiple;
}

}  // namespace jagged
