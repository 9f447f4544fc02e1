#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mge {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic fan-out of one master seed into independent streams
// (repeat index, generation, offspring index, ...).
inline std::uint64_t seed_combine(std::uint64_t seed, std::uint64_t key) {
    return splitmix64(seed ^ splitmix64(key + 0x632be59bd9b4e019ull));
}

inline std::uint64_t seed_combine(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return seed_combine(seed_combine(seed, a), b);
}

// All randomness in the library flows through this wrapper. The helpers are
// written out instead of using <random> distributions, whose output is
// implementation-defined; this keeps runs byte-reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [lo, hi], inclusive. Uses the multiply-shift reduction; the
    // bias for spans below 2^32 is unmeasurable.
    std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo + 1;
        const auto wide = static_cast<unsigned __int128>(engine_()) * span;
        return lo + static_cast<std::uint64_t>(wide >> 64);
    }

    int uniform_int(int lo, int hi) {
        return static_cast<int>(uniform_u64(0, static_cast<std::uint64_t>(hi - lo))) + lo;
    }

    std::size_t uniform_index(std::size_t count) {
        return static_cast<std::size_t>(uniform_u64(0, count - 1));
    }

    std::uint8_t codon() { return static_cast<std::uint8_t>(uniform_u64(0, 255)); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    // Box-Muller, one spare cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace mge
