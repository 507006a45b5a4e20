#pragma once

/// Deterministic randomness. Everything random in this project flows through
/// a std::mt19937_64 seeded with one 64-bit value, so generated instances,
/// tours and Monte-Carlo estimates are pure functions of their seed and
/// reproduce bit-for-bit across platforms. Derived seeds (per instance, per
/// tour, per shard) come from the splitmix64 finalizer.

#include <cstdint>
#include <random>
#include <vector>

namespace twopt {

/// splitmix64 output function (bijective 64-bit mixer).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Hash-chains up to three stream labels onto a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ull;
    std::uint64_t h = mix64(master + gamma);
    h = mix64(h + gamma + a);
    h = mix64(h + gamma + b);
    h = mix64(h + gamma + c);
    return h;
}

/// Seeded generator wrapper with explicit, implementation-independent
/// conversions to doubles and bounded integers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Unbiased integer in [0, bound), bound >= 1, by rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = gen_();
            if (r >= threshold)
                return r % bound;
        }
    }

  private:
    std::mt19937_64 gen_;
};

/// Unbiased Fisher-Yates shuffle driven by Rng::below.
template <typename T> void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace twopt
