#pragma once

#include <bit>
#include <cstdint>

// Deterministic random sources for the simulation engines.
//
// Replicate r of an ensemble is seeded with derive_seed(master_seed, r),
// a SplitMix64 derivation over the (master, index) pair, so results do not
// depend on the order in which replicates are executed. The uniform stream
// itself is xoshiro256++ with its state expanded from the seed through
// SplitMix64, as the generator's authors recommend. Both generators are
// fully specified here, so identical seeds reproduce identical streams on
// any platform.

namespace rumour {

// SplitMix64 step: advances a 64-bit state by the golden-ratio increment
// and returns the finalized output.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for one unit of work (replicate, engine leg, sweep row) under a
// master seed. Bijective in `index` for fixed `master`, so distinct
// replicates never share a stream.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t s = master;
  std::uint64_t t = splitmix64(s) + index;
  return splitmix64(t);
}

// xoshiro256++ with a 53-bit mapping to doubles. draw_count() reports how
// many uniforms were handed out; the coupling tests rely on it.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) noexcept {
    for (auto& word : state_) word = splitmix64(seed);
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1).
  double next() noexcept {
    ++draws_;
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0,1]; safe under log().
  double next_open() noexcept {
    ++draws_;
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  std::uint64_t draw_count() const noexcept { return draws_; }

 private:
  std::uint64_t state_[4];
  std::uint64_t draws_ = 0;
};

}  // namespace rumour
