#pragma once

#include <cstdint>

namespace graphon {

// Name recorded in sampler output; bump it if the generator ever changes.
inline constexpr const char* kPrngName = "splitmix64-counter";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based stream: draw i of stream s under seed is a pure function of
// (seed, s, i), so parallel loops can draw in any order and agree bit for bit.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t bits(std::uint64_t counter) const { return splitmix64(key_ + splitmix64(counter)); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

}  // namespace graphon
