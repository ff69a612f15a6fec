#pragma once

#include <cstdint>
#include <random>

namespace linksmooth {

using Engine = std::mt19937_64;

/// Independent stream families. A replicate never shares a stream across tags.
enum class StreamTag : std::uint64_t {
  kCovariates = 0x636f76,
  kOutcomes = 0x6f7574,
  kStudyPoint = 0x737470,
  kHolder = 0x686c64,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for replicate (outer, inner) of a stream family, hashed from the master seed.
std::uint64_t stream_seed(std::uint64_t master, StreamTag tag, std::uint64_t outer,
                          std::uint64_t inner = 0) noexcept;

inline Engine make_engine(std::uint64_t master, StreamTag tag, std::uint64_t outer,
                          std::uint64_t inner = 0) {
  return Engine(stream_seed(master, tag, outer, inner));
}

}  // namespace linksmooth
