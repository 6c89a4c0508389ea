#pragma once

#include <filesystem>
#include <iosfwd>

#include "jagged/matrix.hpp"

namespace jagged {

// Binary CSR snapshot, version 1.
//
//   bytes 0..3   magic "JGD1"
//   u64 n_rows, u64 n_cols, u64 nnz
//   u64 row_ptr[n_rows + 1]
//   u64 col_idx[nnz]
//   f64 values[nnz]
//
// All integers little-endian, values IEEE-754 binary64 little-endian.

void write_snapshot(const CsrMatrix& m, std::ostream& out);
void write_snapshot(const CsrMatrix& m, const std::filesystem::path& path);

CsrMatrix read_snapshot(std::istream& in);
CsrMatrix read_snapshot(const std::filesystem::path& path);

/// Loads either a JGD1 snapshot or a Matrix Market file, sniffing the magic.
CsrMatrix load_matrix(const std::filesystem::path& path);

}  // namespace jagged
