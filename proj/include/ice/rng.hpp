#pragma once
#include <cstdint>

namespace ice {

// splitmix64. One fixed generator for simulations and test corpora so that
// reports are byte-identical across platforms; std:: distributions are
// implementation-defined and never used.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; exact, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n < 2) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = next(); while (v >= limit);
    return v % n;
  }

  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Independent child stream; used to seed per-shard generators.
  Rng split(std::uint64_t index) {
    Rng tag(state ^ (0xa5a5a5a5deadbeefULL + index * 0x2545f4914f6cdd1dULL));
    return Rng(tag.next());
  }
};

inline const char* kRngName = "splitmix64";

}  // namespace ice
