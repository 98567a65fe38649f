#pragma once

#include <cstdint>
#include <random>

namespace qrate {

/// SplitMix64 finalizer. Used to derive independent stream keys from a
/// (master seed, stream index) pair.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Standard normal variates for one stream of a splittable family.
///
/// Each (seed, index) pair owns its own engine, so the values drawn by a
/// stream never depend on how many other streams exist or in which order
/// they are consumed. The transform is Box-Muller on 53-bit uniforms so
/// the output is fixed by the engine alone and identical across standard
/// library implementations.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t index) : engine_(stream_key(seed, index)) {}

  double operator()();

 private:
  double uniform_open();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qrate
