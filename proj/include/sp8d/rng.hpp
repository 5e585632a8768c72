#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sp8d {

/// splitmix64 step; used for seed derivation only.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Documented seed-splitting scheme: every consumer stream is derived
/// from the master seed and up to three tags (point index, realization,
/// stream id) by chaining splitmix64. Identical inputs give identical
/// streams on every platform.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s = h ^ (a * 0x9e3779b97f4a7c15ULL);
    h = splitmix64(s);
    s = h ^ (b * 0xc2b2ae3d27d4eb4fULL);
    h = splitmix64(s);
    s = h ^ (c * 0x165667b19e3779f9ULL);
    return splitmix64(s);
}

/// Standard-normal generator: Box-Muller over mt19937_64 uniforms, so
/// sequences do not depend on the standard library's distribution
/// internals (bit-reproducible across toolchains).
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : eng_(seed) {}

    double operator()() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

private:
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;  // [0, 1)
    }

    std::mt19937_64 eng_;
    bool have_ = false;
    double cached_ = 0.0;
};

}  // namespace sp8d
