#pragma once

#include <cmath>
#include <cstdint>

namespace sepcut {

// SplitMix64 stream (Steele-Lea-Vigna finalizer, golden-ratio increment).
// Substreams for parallel work are derived by hashing (seed, stream index)
// through the same finalizer, so replica r of a simulation always sees the
// same draws no matter how replicas are partitioned over threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Independent-looking stream for (seed, index); index is typically a
  // replica number.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t h = mix(seed + 0x9e3779b97f4a7c15ULL) ^
                      mix(index + 0xd1b54a32d192ed03ULL);
    return SplitMix64(mix(h));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  bool next_coin() { return (next_u64() >> 63) != 0; }

  // Uniform on the open interval (0,1): 52-bit grid midpoints, so draws are
  // never exactly 0 or 1.
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Exponential(rate); strictly positive, finite.
  double next_exponential(double rate) {
    return -std::log(next_unit_open()) / rate;
  }

 private:
  std::uint64_t state_;
};

}  // namespace sepcut
