#pragma once

#include <cstdint>
#include <vector>

namespace mapf {

// SplitMix64: portable, explicitly specified PRNG so seeded generation is
// bit-identical across platforms and bindings.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased value in [0, bound) via rejection sampling.
  uint64_t next_below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (size_t i = values.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  uint64_t state_;
};

inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
  SplitMix64 rng(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  return rng.next();
}

}  // namespace mapf
