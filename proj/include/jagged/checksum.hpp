#pragma once

#include <cstdint>
#include <span>

namespace jagged {

/// Order-independent 64-bit checksum of a vector:
///
///   sum over i of mix(bits(y[i]) ^ mix(i))   (mod 2^64)
///
/// where bits() is the IEEE-754 bit pattern and mix() the splitmix64
/// finalizer. Equal vectors give equal sums regardless of the order in which
/// the terms are accumulated; a single flipped bit changes the result.
std::uint64_t checksum(std::span<const double> y);

}  // namespace jagged
