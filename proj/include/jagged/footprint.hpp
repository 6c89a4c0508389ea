#pragma once

#include <cstddef>
#include <string>

#include "jagged/formats.hpp"
#include "jagged/types.hpp"

namespace jagged {

/// Device memory accounting of one storage format.
///
/// Values take value_bytes(precision) each; column indices, col_start
/// offsets, row_ptr entries and rowmax entries take 4 bytes each. The pJDS
/// permutation is only applied when entering and leaving the permuted basis
/// and is not counted.
struct FootprintReport {
  std::string format;
  std::size_t stored_entries = 0;
  std::size_t bytes_values = 0;
  std::size_t bytes_indices = 0;
  std::size_t bytes_aux = 0;
  /// stored_entries / nnz - 1
  double padding_overhead_fraction = 0.0;
  /// 1 - stored / stored_ellpack, ELLPACK built at the same warp size.
  double data_reduction_vs_ellpack = 0.0;

  std::size_t total_bytes() const noexcept {
    return bytes_values + bytes_indices + bytes_aux;
  }
};

FootprintReport footprint(const CsrMatrix& m, Precision p = Precision::dp,
                          std::size_t warp_size = default_warp_size);
FootprintReport footprint(const EllpackMatrix& m, Precision p = Precision::dp);
FootprintReport footprint(const EllpackRMatrix& m, Precision p = Precision::dp);
FootprintReport footprint(const PjdsMatrix& m, Precision p = Precision::dp);

/// One `key=value` line per field.
std::string to_key_value(const FootprintReport& r);
/// JSON object whose keys are the field names.
std::string to_json(const FootprintReport& r);

}  // namespace jagged
