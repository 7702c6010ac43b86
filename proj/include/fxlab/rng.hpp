#pragma once

#include <array>
#include <cmath>
#include <cstdint>

// Reproducible random numbers. The generators are fixed by name so seeds
// stay meaningful across builds: splitmix64 for seeding and seed
// derivation, xoshiro256++ for the uniform stream, and the basic (polar-
// free) Box-Muller transform for Gaussians. Given one seed, the draw
// sequence is bit-identical on every platform with IEEE-754 doubles.

namespace fxlab {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

/// k-th per-worker (or per-trajectory) seed derived from a master seed:
/// element k of the splitmix64 stream started at the master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
    SplitMix64 sm(master);
    std::uint64_t s = 0;
    for (std::uint64_t i = 0; i <= k; ++i) s = sm.next();
    return s;
}

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1]: (n+1) * 2^-53 with n the top 53 bits.
    double uniform01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_;
};

/// N(0, sigma) stream. Box-Muller produces normals in pairs; the second of
/// each pair is cached, so the uniform consumption per two draws is fixed.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

    double normal(double sigma) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_ * sigma;
        }
        const double u1 = gen_.uniform01();
        const double u2 = gen_.uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a) * sigma;
    }

private:
    Xoshiro256pp gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace fxlab
