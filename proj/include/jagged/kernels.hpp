#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jagged/formats.hpp"
#include "jagged/matrix.hpp"

namespace jagged {

/// Work and traffic counters of one spMVM, following the warp scheduling
/// picture: padded_fma counts stored zeros that were multiplied,
/// idle_lane_cycles counts lanes waiting on the longest row of their warp.
///
/// Byte counts assume double precision, 4-byte indices, one RHS load per
/// processed entry, and one load plus one store per result element.
struct SpmvStats {
  std::size_t useful_fma = 0;
  std::size_t padded_fma = 0;
  std::size_t idle_lane_cycles = 0;
  std::size_t bytes_matrix = 0;
  std::size_t bytes_rhs_worst = 0;
  std::size_t bytes_lhs = 0;

  friend bool operator==(const SpmvStats&, const SpmvStats&) = default;
};

struct SpmvResult {
  std::vector<double> y;
  SpmvStats stats;
};

// Every kernel accumulates a row left to right over its stored order,
// starting from 0.0 (or from the incoming y for the *_accumulate forms).
// x is always in the original column basis.

std::vector<double> spmv_csr(const CsrMatrix& m, std::span<const double> x);
/// y += m * x
void spmv_csr_accumulate(const CsrMatrix& m, std::span<const double> x,
                         std::span<double> y);

/// Runs every stored slot, padding included.
SpmvResult spmv_ellpack(const EllpackMatrix& m, std::span<const double> x);

SpmvResult spmv_ellpack_r(const EllpackRMatrix& m, std::span<const double> x);
void spmv_ellpack_r_accumulate(const EllpackRMatrix& m,
                               std::span<const double> x, std::span<double> y);

/// Result is in permuted row order; apply permute_vector(..., inverse) to
/// return to the original basis.
SpmvResult spmv_pjds(const PjdsMatrix& m, std::span<const double> x);
/// y_permuted += m * x, with y in permuted row order.
void spmv_pjds_accumulate(const PjdsMatrix& m, std::span<const double> x,
                          std::span<double> y_permuted);

SpmvStats spmv_stats(const EllpackMatrix& m);
SpmvStats spmv_stats(const EllpackRMatrix& m);
SpmvStats spmv_stats(const PjdsMatrix& m);

/// Row-chunked parallel execution. Output is bitwise identical to the
/// sequential kernel of the same format for any chunk count.
std::vector<double> spmv_parallel(const CsrMatrix& m, std::span<const double> x,
                                  std::size_t chunks);
std::vector<double> spmv_parallel(const EllpackMatrix& m,
                                  std::span<const double> x, std::size_t chunks);
std::vector<double> spmv_parallel(const EllpackRMatrix& m,
                                  std::span<const double> x, std::size_t chunks);
std::vector<double> spmv_parallel(const PjdsMatrix& m, std::span<const double> x,
                                  std::size_t chunks);

/// Half-open column range [begin, end).
struct ColumnRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool contains(std::size_t c) const noexcept { return c >= begin && c < end; }
};

/// A matrix split by column into a part reading the local slice of x and a
/// part reading a compact buffer of nonlocal elements.
struct ColumnSplit {
  ColumnRange local_cols;
  /// nonlocal_cols[slot] = global column; sorted ascending.
  std::vector<std::size_t> nonlocal_cols;
  CsrMatrix local;     // n_rows x local_cols.size()
  CsrMatrix nonlocal;  // n_rows x nonlocal_cols.size()
};

/// Throws InvalidMatrixError when a column outside `local_cols` is missing
/// from `nonlocal_cols`.
ColumnSplit split_columns(const CsrMatrix& m, ColumnRange local_cols,
                          std::vector<std::size_t> nonlocal_cols);

/// Two passes writing the result twice: y = local * x_local, then
/// y += nonlocal * x_nonlocal.
std::vector<double> spmv_split(const ColumnSplit& s,
                               std::span<const double> x_local,
                               std::span<const double> x_nonlocal);
std::vector<double> spmv_split(const CsrMatrix& m, ColumnRange local_cols,
                               std::span<const double> x_local,
                               std::span<const double> x_nonlocal,
                               std::vector<std::size_t> nonlocal_cols);

}  // namespace jagged
