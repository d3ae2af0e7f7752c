#pragma once

#include <cstdint>

namespace nmr {

// Counter-based generator: a Weyl sequence fed through the SplitMix64
// finalizer. Stateless apart from the counter, so identical seeds give
// identical streams on every platform, and independent substreams are cheap.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_range(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  // Unbiased-enough uniform integer in [0, bound) via 128-bit multiply.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) return 0;
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
    return static_cast<std::uint64_t>(wide >> 64);
  }

  // Seed for an independent substream: the stream id is mixed into the base
  // seed so derived streams never collide with the parent or each other.
  std::uint64_t derive_seed(std::uint64_t stream) const {
    std::uint64_t z = seed_ ^ (0xD1B54A32D192ED03ull + stream * 0xEB44ACCAB455D165ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  CounterRng fork(std::uint64_t stream) const { return CounterRng(derive_seed(stream)); }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace nmr
