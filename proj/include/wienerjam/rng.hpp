#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace wienerjam {

/// Deterministic random source (xoshiro256** core, splitmix64 seeding).
///
/// All stochastic code in this project draws from an explicit Rng so that
/// results are reproducible bit-for-bit regardless of thread count.
/// Stream fan-out scheme: substream(seed, k) hashes the pair (seed, k)
/// through splitmix64, so a master seed expands into independent child
/// seeds by counter:
///
///   cell  = substream(master, cell_index)
///   trial = substream(cell, trial_index)
///
/// Nested fan-out is allowed; indices are plain counters.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    /// Child seed for stream `k` of `seed`.
    static std::uint64_t substream(std::uint64_t seed, std::uint64_t k) {
        std::uint64_t s = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
        return splitmix64(s);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Random sign, +1 or -1.
    double sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

    /// Standard normal via Box-Muller (pairs cached).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    /// Circularly symmetric complex Gaussian with total variance `variance`.
    std::complex<double> circular_gaussian(double variance) {
        const double s = std::sqrt(variance / 2.0);
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {s * r * std::cos(2.0 * M_PI * u2), s * r * std::sin(2.0 * M_PI * u2)};
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace wienerjam
