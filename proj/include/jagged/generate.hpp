#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "jagged/matrix.hpp"

namespace jagged {

namespace shape {

/// Every row has exactly `length` entries.
struct Constant {
  std::size_t length = 1;
};

/// Row lengths drawn uniformly from [lo, hi].
struct Uniform {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

/// ceil(peak_fraction * n_rows) rows of length peak_length; the remaining
/// rows draw uniformly from [tail_lo, peak_length].
struct Clustered {
  double peak_fraction = 0.8;
  std::size_t peak_length = 1;
  std::size_t tail_lo = 1;
};

/// One fully populated row, every other row has a single entry.
struct Adversarial {};

/// Entries on the given diagonal offsets (col = row + offset). The main
/// diagonal is always present so no row is empty.
struct Banded {
  std::vector<std::int64_t> offsets;
};

}  // namespace shape

using RowDistribution =
    std::variant<shape::Constant, shape::Uniform,
                 shape::Clustered, shape::Adversarial,
                 shape::Banded>;

/// Square synthetic matrix description.
struct GeneratorSpec {
  std::size_t n_rows = 0;
  RowDistribution distribution = shape::Constant{};
  std::uint64_t seed = 0;
};

/// Builds a deterministic square matrix. Row lengths are drawn first, then
/// distinct columns are sampled per row; values are uniform in [-1, 1].
/// Throws InfeasibleSpecError when a requested row length exceeds n_rows.
CsrMatrix generate(const GeneratorSpec& spec);

/// Parses "constant:K", "uniform:LO:HI", "clustered:FRAC:PEAK:TAIL_LO",
/// "adversarial" or "banded:O1,O2,...".
RowDistribution parse_distribution(const std::string& text);
std::string to_string(const RowDistribution& d);

/// Deterministic vector with entries uniform in [-1, 1], used as the RHS x.
std::vector<double> random_vector(std::size_t n, std::uint64_t seed);

}  // namespace jagged
