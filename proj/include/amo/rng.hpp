#pragma once

#include <cstdint>

namespace amo {

// splitmix64.  Self-contained so that seeded sweeps are byte-reproducible
// across platforms (std::uniform_real_distribution is not).
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0x5EED) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [a,b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // uniform integer in [lo, hi] inclusive
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

}  // namespace amo
