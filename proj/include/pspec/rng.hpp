#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace pspec {

// Deterministic 64-bit generator (splitmix-style). The exact update is part
// of the toolkit contract so that seeded examples reproduce bit-for-bit:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// uniform():  (next() >> 11) * 2^-53, in [0, 1)
// gauss():    Box-Muller on two uniforms, draws in (u1, u2) order and
//             returns sqrt(-2 ln(1-u1)) * cos(2 pi u2)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // standard normal
    double gauss() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // complex standard normal: independent N(0,1) real and imaginary parts
    std::complex<double> cgauss() {
        double re = gauss();
        double im = gauss();
        return {re, im};
    }

private:
    std::uint64_t state_;
};

} // namespace pspec
