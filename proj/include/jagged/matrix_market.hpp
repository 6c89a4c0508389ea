#pragma once

#include <filesystem>
#include <iosfwd>

#include "jagged/matrix.hpp"

namespace jagged {

/// Reads a Matrix Market coordinate file with real or integer values.
///
/// Symmetric files are expanded to full storage and indices become
/// 0-based. Pattern, complex, hermitian, skew-symmetric and array files are
/// rejected. Errors carry the offending line number.
CooMatrix read_matrix_market(const std::filesystem::path& path);
CooMatrix read_matrix_market(std::istream& in);

/// Writes a general real coordinate file with 1-based indices.
void write_matrix_market(const CsrMatrix& m, std::ostream& out);
void write_matrix_market(const CsrMatrix& m, const std::filesystem::path& path);

}  // namespace jagged
