#pragma once

#include <array>
#include <cstdint>

namespace tridiag {

// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as
// 1, 2, 3").  A keyed bijection on 128-bit counters.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  static Counter block(Counter counter, Key key) noexcept;
};

// Stream of random bits addressed by (seed, stream).  Two generators with
// the same pair produce the same sequence; any trial can be regenerated
// without replaying the others.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open() noexcept;

 private:
  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
};

}  // namespace tridiag
