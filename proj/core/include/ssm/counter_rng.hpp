// Counter-based deterministic randomness.
//
// Every random quantity in the library is a pure function of a 64-bit key:
// the key is hashed from (seed, tree path), and a CounterRng turns a key into
// a stream of uniforms by mixing key + counter. No generator state is shared
// between tree nodes, so values are independent of traversal order and safe
// to evaluate from concurrent workers.
#pragma once

#include <cstdint>
#include <span>

namespace ssm {

namespace detail {
// splitmix64 finalizer (Steele, Lea, Flood). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSymbolSalt = 0xD1B54A32D192ED03ULL;
}  // namespace detail

/// Key of the root node (empty word) for a given realization seed.
constexpr std::uint64_t root_key(std::uint64_t seed) {
    return detail::mix64(seed + detail::kGolden);
}

/// Key of the child reached from `parent` by 0-based symbol `symbol`.
constexpr std::uint64_t child_key(std::uint64_t parent, std::uint32_t symbol) {
    return detail::mix64(parent ^ ((static_cast<std::uint64_t>(symbol) + 1) * detail::kSymbolSalt));
}

/// Key of an arbitrary word: fold child_key along the path from the root.
inline std::uint64_t word_key(std::uint64_t seed, std::span<const std::uint8_t> word) {
    std::uint64_t k = root_key(seed);
    for (std::uint8_t s : word) k = child_key(k, s);
    return k;
}

/// Counter-mode uniform stream. Identical (key, counter) give identical
/// output on every platform: integer ops plus one exact float conversion.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return detail::mix64(key_ + (counter_++) * detail::kGolden); }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [-h, h].
    double next_symmetric(double h) { return (2.0 * next_unit() - 1.0) * h; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 1;
};

}  // namespace ssm
