#pragma once

#include <cstddef>
#include <string_view>

namespace jagged {

enum class Precision { sp, dp };

/// Bytes per matrix value or vector element at the given precision.
constexpr std::size_t value_bytes(Precision p) noexcept {
  return p == Precision::sp ? 4 : 8;
}

/// Device-side width of a column index, offset or row-length entry.
inline constexpr std::size_t index_bytes = 4;

constexpr std::string_view to_string(Precision p) noexcept {
  return p == Precision::sp ? "sp" : "dp";
}

}  // namespace jagged
