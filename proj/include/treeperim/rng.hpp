#ifndef TREEPERIM_RNG_HPP
#define TREEPERIM_RNG_HPP

#include <cstdint>

namespace treeperim {

// Deterministic splitmix64 generator. Used for all seeded randomness so that
// runs are byte-identical across platforms (std::uniform_int_distribution is
// implementation-defined and would not be).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

 private:
  std::uint64_t state_;
};

}  // namespace treeperim

#endif
