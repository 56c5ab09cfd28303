#pragma once

#include <cstdint>

namespace ergolab {

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer
inline constexpr uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

inline constexpr uint64_t hash2(uint64_t a, uint64_t b) {
    return mix64(mix64(a + kGolden) ^ mix64(b + 2 * kGolden));
}

// int64 -> uint64 preserving injectivity for negative indices
inline constexpr uint64_t zigzag(int64_t n) {
    return (static_cast<uint64_t>(n) << 1) ^ static_cast<uint64_t>(n >> 63);
}

/**
 * Counter-based generator. The n-th output is a pure function of (key, n),
 * so any consumer can draw by index and parallel code stays deterministic
 * for a fixed seed regardless of scheduling. fork() derives an independent
 * stream without touching the parent's counter.
 */
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0) : key_(hash2(seed ^ 0x45524742ull, stream)) {}

    uint64_t at(uint64_t n) const { return mix64(key_ + kGolden * (n + 1)); }
    double unit_at(uint64_t n) const { return to_unit(at(n)); }

    uint64_t next_u64() { return at(counter_++); }
    double next_unit() { return to_unit(next_u64()); }  // in [0, 1)

    Rng fork(uint64_t stream) const {
        Rng r;
        r.key_ = hash2(key_, stream);
        return r;
    }

    uint64_t key() const { return key_; }

    static double to_unit(uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

private:
    Rng() = default;
    uint64_t key_ = 0;
    uint64_t counter_ = 0;
};

}  // namespace ergolab
