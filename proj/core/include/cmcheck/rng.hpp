#ifndef CMCHECK_RNG_HPP
#define CMCHECK_RNG_HPP

#include <cstdint>
#include <random>

namespace cmcheck {

// Seeded pseudo-random source. The integer helpers avoid
// std::uniform_int_distribution so that streams are identical across
// standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, n), n > 0, by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform in [0, 1).
    double unit() { return double(eng_() >> 11) * 0x1.0p-53; }

    bool coin(double p) { return unit() < p; }

    /// Derives an independent stream (used to keep parallel trials decoupled).
    Rng fork(std::uint64_t index) {
        std::uint64_t s = eng_();
        s ^= 0x9e3779b97f4a7c15ull * (index + 1);
        return Rng(s);
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace cmcheck

#endif
