#include "jagged/checksum.hpp"

#include <bit>

namespace jagged {

namespace {

constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t checksum(std::span<const double> y) {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sum += mix(std::bit_cast<std::uint64_t>(y[i]) ^ mix(i));
  }
  return sum;
}

}  // namespace jagged
