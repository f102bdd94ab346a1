#pragma once

#include <cstdint>
#include <random>

namespace srsim {

// Mixes a 64-bit value into a well-distributed seed (splitmix64 step).
std::uint64_t splitmix64(std::uint64_t x);

// One deterministic random stream. Streams are derived from a master seed
// by a fixed per-stream offset, so adding a node to a scenario never
// perturbs the draws seen by existing nodes. The raw engine is mt19937_64
// (bit-exact across platforms); the distribution transforms below are
// hand-rolled because the std::* distributions are not portable.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : engine_(splitmix64(master_seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1))) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n], exact via rejection sampling.
  std::uint64_t uniform_int(std::uint64_t n);

  // Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1]; safe as a log() argument.
  double uniform_open01() { return 1.0 - uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace srsim
