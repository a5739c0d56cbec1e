#pragma once

#include <cstdint>

namespace satqr {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream. Every (seed, stream, index) triple names an
/// independent substream, so the draws made for emission i do not depend on
/// how emissions are split across threads.
class SubstreamRng {
 public:
  SubstreamRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept
      : state_(mix64(mix64(seed ^ 0x9e3779b97f4a7c15ULL) + mix64(stream * 0xd1b54a32d192ed03ULL + 1)) ^
               mix64(index + 0x632be59bd9b4e019ULL)) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace satqr
