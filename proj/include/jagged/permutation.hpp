#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jagged {

enum class PermuteDirection { forward, inverse };

/// `p` maps new index -> old index.
///   forward: out[k] = v[p[k]]
///   inverse: out[p[k]] = v[k]
/// Throws DimensionError when the lengths differ.
std::vector<double> permute_vector(std::span<const double> v,
                                   std::span<const std::size_t> p,
                                   PermuteDirection direction);

bool is_permutation(std::span<const std::size_t> p);

}  // namespace jagged
