#pragma once

#include <cstdint>
#include <random>

namespace tracelab {

// Seeded generator for all randomized property checks.  std::mt19937_64 has a
// fully specified algorithm, so a recorded seed reproduces the exact stream on
// any platform, which is what makes selftest reports byte-identical.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return gen_(); }

    // Value in [0, bound). Modulo bias is irrelevant here; only determinism
    // matters.
    std::uint64_t below(std::uint64_t bound) { return bound ? gen_() % bound : 0; }

    long range(long lo, long hi) { // inclusive bounds
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (gen_() & 1u) != 0; }

    // Child stream for an independent sub-task, stable under reordering of
    // draws elsewhere.
    Rng fork(std::uint64_t tag) const {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (tag + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace tracelab
