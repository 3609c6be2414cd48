#pragma once

#include <cstdint>

namespace rcf {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of the stream for one sample. Pure function of its inputs, so samples
// can be generated in any order on any number of workers.
constexpr std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t sample_index) noexcept {
  return splitmix64(master_seed ^ splitmix64(sample_index));
}

// Maps 64 random bits to a double uniform on (0, 1] using the top 53 bits.
constexpr double unit_interval_open_closed(std::uint64_t bits) noexcept {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace rcf
