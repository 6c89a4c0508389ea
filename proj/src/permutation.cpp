#include "jagged/permutation.hpp"

#include "jagged/error.hpp"

namespace jagged {

std::vector<double> permute_vector(std::span<const double> v,
                                   std::span<const std::size_t> p,
                                   PermuteDirection direction) {
  if (v.size() != p.size()) {
    throw DimensionError("vector length " + std::to_string(v.size()) +
                         " does not match permutation length " +
                         std::to_string(p.size()));
  }
  std::vector<double> out(v.size());
  if (direction == PermuteDirection::forward) {
    for (std::size_t k = 0; k < p.size(); ++k) out[k] = v[p[k]];
  } else {
    for (std::size_t k = 0; k < p.size(); ++k) out[p[k]] = v[k];
  }
  return out;
}

bool is_permutation(std::span<const std::size_t> p) {
  std::vector<bool> seen(p.size(), false);
  for (auto k : p) {
    if (k >= p.size() || seen[k]) return false;
    seen[k] = true;
  }
  return true;
}

}  // namespace jagged
