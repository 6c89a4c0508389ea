#include "jagged/kernels.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "jagged/error.hpp"
#include "jagged/types.hpp"

namespace jagged {

namespace {

constexpr std::size_t kValue = value_bytes(Precision::dp);

void check_x(std::size_t n_cols, std::span<const double> x) {
  if (x.size() != n_cols) {
    throw DimensionError("x has length " + std::to_string(x.size()) +
                         ", matrix has " + std::to_string(n_cols) + " columns");
  }
}

void check_y(std::size_t n_rows, std::span<const double> y) {
  if (y.size() != n_rows) {
    throw DimensionError("y has length " + std::to_string(y.size()) +
                         ", matrix has " + std::to_string(n_rows) + " rows");
  }
}

// Row-range bodies shared by the sequential and parallel drivers. `y`
// covers all rows; only [begin, end) is touched.

void csr_rows(const CsrMatrix& m, const double* x, double* y, bool accumulate,
              std::size_t begin, std::size_t end) {
  const auto row_ptr = m.row_ptr();
  const auto col = m.col_idx();
  const auto val = m.values();
  for (std::size_t i = begin; i < end; ++i) {
    double sum = accumulate ? y[i] : 0.0;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      sum += val[k] * x[col[k]];
    }
    y[i] = sum;
  }
}

void ellpack_rows(const EllpackMatrix& m, const double* x, double* y,
                  std::size_t begin, std::size_t end) {
  const auto val = m.values();
  const auto col = m.col_idx();
  const std::size_t n = m.n_rows_padded();
  for (std::size_t i = begin; i < end; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.width(); ++j) {
      sum += val[j * n + i] * x[col[j * n + i]];
    }
    if (i < m.n_rows()) y[i] = sum;
  }
}

void ellpack_r_rows(const EllpackRMatrix& m, const double* x, double* y,
                    bool accumulate, std::size_t begin, std::size_t end) {
  const auto val = m.values();
  const auto col = m.col_idx();
  const auto rowmax = m.rowmax();
  const std::size_t n = m.n_rows_padded();
  for (std::size_t i = begin; i < end; ++i) {
    double sum = accumulate ? y[i] : 0.0;
    for (std::size_t j = 0; j < rowmax[i]; ++j) {
      sum += val[j * n + i] * x[col[j * n + i]];
    }
    y[i] = sum;
  }
}

void pjds_rows(const PjdsMatrix& m, const double* x, double* y, bool accumulate,
               std::size_t begin, std::size_t end) {
  const auto val = m.values();
  const auto col = m.col_idx();
  const auto rowmax = m.rowmax();
  const auto col_start = m.col_start();
  for (std::size_t i = begin; i < end; ++i) {
    double sum = accumulate ? y[i] : 0.0;
    for (std::size_t j = 0; j < rowmax[i]; ++j) {
      const auto col_offset = col_start[j];
      sum += val[col_offset + i] * x[col[col_offset + i]];
    }
    y[i] = sum;
  }
}

// Splits [0, n) into `chunks` contiguous ranges and runs each non-empty one
// on its own thread.
template <class Body>
void run_chunked(std::size_t n, std::size_t chunks, Body body) {
  chunks = std::max<std::size_t>(chunks, 1);
  if (chunks == 1 || n <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::jthread> workers;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    if (begin == end) continue;
    workers.emplace_back([=] { body(begin, end); });
  }
}

std::size_t warp_idle(std::span<const std::uint32_t> lengths, std::size_t warp) {
  std::size_t idle = 0;
  for (std::size_t w = 0; w < lengths.size(); w += warp) {
    const auto last = std::min(lengths.size(), w + warp);
    std::uint32_t longest = 0;
    for (std::size_t i = w; i < last; ++i) longest = std::max(longest, lengths[i]);
    for (std::size_t i = w; i < last; ++i) idle += longest - lengths[i];
  }
  return idle;
}

}  // namespace

std::vector<double> spmv_csr(const CsrMatrix& m, std::span<const double> x) {
  check_x(m.n_cols(), x);
  std::vector<double> y(m.n_rows());
  csr_rows(m, x.data(), y.data(), false, 0, m.n_rows());
  return y;
}

void spmv_csr_accumulate(const CsrMatrix& m, std::span<const double> x,
                         std::span<double> y) {
  check_x(m.n_cols(), x);
  check_y(m.n_rows(), y);
  csr_rows(m, x.data(), y.data(), true, 0, m.n_rows());
}

SpmvResult spmv_ellpack(const EllpackMatrix& m, std::span<const double> x) {
  check_x(m.n_cols(), x);
  SpmvResult r{std::vector<double>(m.n_rows()), spmv_stats(m)};
  ellpack_rows(m, x.data(), r.y.data(), 0, m.n_rows_padded());
  return r;
}

SpmvResult spmv_ellpack_r(const EllpackRMatrix& m, std::span<const double> x) {
  check_x(m.n_cols(), x);
  SpmvResult r{std::vector<double>(m.n_rows()), spmv_stats(m)};
  ellpack_r_rows(m, x.data(), r.y.data(), false, 0, m.n_rows());
  return r;
}

void spmv_ellpack_r_accumulate(const EllpackRMatrix& m,
                               std::span<const double> x, std::span<double> y) {
  check_x(m.n_cols(), x);
  check_y(m.n_rows(), y);
  ellpack_r_rows(m, x.data(), y.data(), true, 0, m.n_rows());
}

SpmvResult spmv_pjds(const PjdsMatrix& m, std::span<const double> x) {
  check_x(m.n_cols(), x);
  SpmvResult r{std::vector<double>(m.n_rows()), spmv_stats(m)};
  pjds_rows(m, x.data(), r.y.data(), false, 0, m.n_rows());
  return r;
}

void spmv_pjds_accumulate(const PjdsMatrix& m, std::span<const double> x,
                          std::span<double> y_permuted) {
  check_x(m.n_cols(), x);
  check_y(m.n_rows(), y_permuted);
  pjds_rows(m, x.data(), y_permuted.data(), true, 0, m.n_rows());
}

SpmvStats spmv_stats(const EllpackMatrix& m) {
  SpmvStats s;
  s.useful_fma = m.nnz();
  s.padded_fma = m.stored_entries() - m.nnz();
  s.bytes_matrix = m.stored_entries() * (kValue + index_bytes);
  s.bytes_rhs_worst = m.stored_entries() * kValue;
  s.bytes_lhs = 2 * m.n_rows() * kValue;
  return s;
}

SpmvStats spmv_stats(const EllpackRMatrix& m) {
  SpmvStats s;
  s.useful_fma = m.nnz();
  s.idle_lane_cycles = warp_idle(m.rowmax(), m.warp_size());
  s.bytes_matrix = m.nnz() * (kValue + index_bytes) + m.rowmax().size() * index_bytes;
  s.bytes_rhs_worst = m.nnz() * kValue;
  s.bytes_lhs = 2 * m.n_rows() * kValue;
  return s;
}

SpmvStats spmv_stats(const PjdsMatrix& m) {
  SpmvStats s;
  s.useful_fma = m.nnz();
  s.idle_lane_cycles = warp_idle(m.rowmax(), m.block_rows());
  s.bytes_matrix = m.nnz() * (kValue + index_bytes) + m.rowmax().size() * index_bytes;
  s.bytes_rhs_worst = m.nnz() * kValue;
  s.bytes_lhs = 2 * m.n_rows() * kValue;
  return s;
}

std::vector<double> spmv_parallel(const CsrMatrix& m, std::span<const double> x,
                                  std::size_t chunks) {
  check_x(m.n_cols(), x);
  std::vector<double> y(m.n_rows());
  run_chunked(m.n_rows(), chunks, [&](std::size_t b, std::size_t e) {
    csr_rows(m, x.data(), y.data(), false, b, e);
  });
  return y;
}

std::vector<double> spmv_parallel(const EllpackMatrix& m,
                                  std::span<const double> x, std::size_t chunks) {
  check_x(m.n_cols(), x);
  std::vector<double> y(m.n_rows());
  run_chunked(m.n_rows_padded(), chunks, [&](std::size_t b, std::size_t e) {
    ellpack_rows(m, x.data(), y.data(), b, e);
  });
  return y;
}

std::vector<double> spmv_parallel(const EllpackRMatrix& m,
                                  std::span<const double> x, std::size_t chunks) {
  check_x(m.n_cols(), x);
  std::vector<double> y(m.n_rows());
  run_chunked(m.n_rows(), chunks, [&](std::size_t b, std::size_t e) {
    ellpack_r_rows(m, x.data(), y.data(), false, b, e);
  });
  return y;
}

std::vector<double> spmv_parallel(const PjdsMatrix& m, std::span<const double> x,
                                  std::size_t chunks) {
  check_x(m.n_cols(), x);
  std::vector<double> y(m.n_rows());
  run_chunked(m.n_rows(), chunks, [&](std::size_t b, std::size_t e) {
    pjds_rows(m, x.data(), y.data(), false, b, e);
  });
  return y;
}

ColumnSplit split_columns(const CsrMatrix& m, ColumnRange local_cols,
                          std::vector<std::size_t> nonlocal_cols) {
  if (local_cols.begin > local_cols.end || local_cols.end > m.n_cols()) {
    throw DimensionError("local column range exceeds the matrix");
  }
  if (!std::is_sorted(nonlocal_cols.begin(), nonlocal_cols.end()) ||
      std::adjacent_find(nonlocal_cols.begin(), nonlocal_cols.end()) !=
          nonlocal_cols.end()) {
    throw InvalidMatrixError("nonlocal columns must be sorted and unique");
  }

  std::vector<std::size_t> lp{0}, lc, np{0}, nc;
  std::vector<double> lv, nv;
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    auto cols = m.row_cols(i);
    auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto c = cols[k];
      if (local_cols.contains(c)) {
        lc.push_back(c - local_cols.begin);
        lv.push_back(vals[k]);
        continue;
      }
      auto it = std::lower_bound(nonlocal_cols.begin(), nonlocal_cols.end(), c);
      if (it == nonlocal_cols.end() || *it != c) {
        throw InvalidMatrixError("column " + std::to_string(c) +
                                 " is neither local nor mapped to a halo slot");
      }
      nc.push_back(static_cast<std::size_t>(it - nonlocal_cols.begin()));
      nv.push_back(vals[k]);
    }
    lp.push_back(lc.size());
    np.push_back(nc.size());
  }

  ColumnSplit s;
  s.local_cols = local_cols;
  s.local = CsrMatrix(m.n_rows(), local_cols.size(), std::move(lp),
                      std::move(lc), std::move(lv));
  s.nonlocal = CsrMatrix(m.n_rows(), nonlocal_cols.size(), std::move(np),
                         std::move(nc), std::move(nv));
  s.nonlocal_cols = std::move(nonlocal_cols);
  return s;
}

std::vector<double> spmv_split(const ColumnSplit& s,
                               std::span<const double> x_local,
                               std::span<const double> x_nonlocal) {
  auto y = spmv_csr(s.local, x_local);
  spmv_csr_accumulate(s.nonlocal, x_nonlocal, y);
  return y;
}

std::vector<double> spmv_split(const CsrMatrix& m, ColumnRange local_cols,
                               std::span<const double> x_local,
                               std::span<const double> x_nonlocal,
                               std::vector<std::size_t> nonlocal_cols) {
  return spmv_split(split_columns(m, local_cols, std::move(nonlocal_cols)),
                    x_local, x_nonlocal);
}

}  // namespace jagged
