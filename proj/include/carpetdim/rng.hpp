#pragma once

// Counter-based random streams: word `counter` of stream `stream` is a pure
// function of (seed, stream, counter), so samples can be generated in any
// order or in parallel with identical results.

#include <cstdint>

namespace carpetdim::rng {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t stream_word(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept {
  const std::uint64_t key = mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL));
  return mix64(key + counter * 0xD1B54A32D192ED03ULL);
}

/// Maps the top 32 bits of a word to 0..n-1 (multiply-shift; bias below n / 2^32).
constexpr std::uint32_t bounded(std::uint64_t word, std::uint32_t n) noexcept {
  return static_cast<std::uint32_t>(((word >> 32) * n) >> 32);
}

}  // namespace carpetdim::rng
