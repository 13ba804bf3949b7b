#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace enwsn {

/// Portable random stream for trace synthesis.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard library's distributions are implementation-defined,
/// so the variates are derived here explicitly:
///   - uniform01: top 53 bits of one engine draw, scaled by 2^-53, in [0, 1).
///   - gaussian:  Box-Muller on two uniform01 draws (u1 mapped to (0, 1]),
///                returning the cosine branch only; one variate per two draws.
///   - exponential: -ln(1 - u) / rate.
/// Any port that follows these rules reproduces traces bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double gaussian(double sigma) {
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double exponential(double rate) { return -std::log(1.0 - uniform01()) / rate; }

    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace enwsn
