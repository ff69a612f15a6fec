#include "linksmooth/seeding.hpp"

namespace linksmooth {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, StreamTag tag, std::uint64_t outer,
                          std::uint64_t inner) noexcept {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(tag));
  h = splitmix64(h ^ outer);
  return splitmix64(h ^ (inner * 0xd1b54a32d192ed03ULL));
}

}  // namespace linksmooth
