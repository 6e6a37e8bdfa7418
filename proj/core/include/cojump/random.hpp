#pragma once

// Counter-based random streams. Every draw is a pure function of
// (seed, stream, index), so paths are reproducible independent of thread
// scheduling. The block function is Philox4x32-10 (Salmon et al., SC'11);
// normals are produced by inversion of the uniform draw.

#include <array>
#include <cstdint>

namespace cojump {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

/// SplitMix64 finalizer, used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of Monte Carlo run r: base ^ splitmix64(r).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run) noexcept {
  return base ^ splitmix64(run);
}

/// One independent stream: key = seed, counter = (index, stream id).
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint32_t stream) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0,1) with 53 random bits.
  double uniform() noexcept;
  double normal() noexcept;
  /// Exponential with rate lambda > 0.
  double exponential(double lambda) noexcept;

 private:
  PhiloxKey key_;
  std::uint32_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int pos_ = 2;
};

}  // namespace cojump
