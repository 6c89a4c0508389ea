#include "jagged/histogram.hpp"

#include <algorithm>

namespace jagged {

RowLengthHistogram histogram(const CsrMatrix& m) {
  RowLengthHistogram h;
  h.n_rows = m.n_rows();
  h.nnz = m.nnz();
  for (std::size_t i = 0; i < m.n_rows(); ++i) ++h.bins[m.row_length(i)];
  if (!h.bins.empty()) {
    h.min_len = h.bins.begin()->first;
    h.max_len = h.bins.rbegin()->first;
  }
  h.mean_len = h.n_rows == 0 ? 0.0
                             : static_cast<double>(h.nnz) /
                                   static_cast<double>(h.n_rows);
  return h;
}

RowLengthHistogram constant_histogram(std::size_t n_rows, std::size_t length) {
  RowLengthHistogram h;
  h.n_rows = n_rows;
  h.nnz = n_rows * length;
  if (n_rows > 0) h.bins[length] = n_rows;
  h.min_len = h.max_len = length;
  h.mean_len = static_cast<double>(length);
  return h;
}

}  // namespace jagged
