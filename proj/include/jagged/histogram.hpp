#pragma once

#include <cstddef>
#include <map>

#include "jagged/matrix.hpp"

namespace jagged {

/// Row-length distribution with bin size 1.
struct RowLengthHistogram {
  std::map<std::size_t, std::size_t> bins;  // length -> row count
  std::size_t n_rows = 0;
  std::size_t nnz = 0;
  std::size_t min_len = 0;
  std::size_t max_len = 0;
  double mean_len = 0.0;
};

RowLengthHistogram histogram(const CsrMatrix& m);

/// Histogram of a constant-length matrix without materializing it.
RowLengthHistogram constant_histogram(std::size_t n_rows, std::size_t length);

}  // namespace jagged
