#include "srsim/rng.hpp"

namespace srsim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t RngStream::uniform_int(std::uint64_t n) {
  const std::uint64_t values = n + 1;  // n == UINT64_MAX not supported, never needed
  const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % values;
  const std::uint64_t limit =
      (rem == values - 1) ? std::numeric_limits<std::uint64_t>::max()
                          : std::numeric_limits<std::uint64_t>::max() - rem - 1;
  std::uint64_t draw = next_u64();
  while (draw > limit) draw = next_u64();
  return draw % values;
}

}  // namespace srsim
