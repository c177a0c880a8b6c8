// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <complex>

namespace mcradar {

// Counter-based generator: output n is a bijective scramble of
// key + n * gamma, so draws are a pure function of (seed, stream, counter).
// Substreams with distinct stream ids never overlap in practice; masks and
// noise draw from different streams so one can change without the other.
class CounterRng {
  public:
    // Purpose tags for substreams. Keep stable: serialized experiments
    // depend on the (seed, stream) -> draw mapping.
    static constexpr std::uint64_t kMaskStream = 0x6d61736bULL;   // "mask"
    static constexpr std::uint64_t kNoiseStream = 0x6e6f6973ULL;  // "nois"
    static constexpr std::uint64_t kSceneStream = 0x7363656eULL;  // "scen"
    static constexpr std::uint64_t kGenericStream = 0;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = kGenericStream)
        : key_(mix(mix(seed + 0x2545f4914f6cdd1dULL) ^ mix(stream))) {}

    std::uint64_t next_u64() { return mix(key_ + (counter_++) * kGamma); }

    // Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1], safe as a log() argument.
    double next_open_double() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t v = next_u64();
            if (v >= threshold) return v % n;
        }
    }

    // Standard normal (Box-Muller, no cached spare).
    double next_gaussian() {
        const double u1 = next_open_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    // Circularly-symmetric complex gaussian with E|z|^2 = sigma^2.
    std::complex<double> next_complex_gaussian(double sigma) {
        const double u1 = next_open_double();
        const double u2 = next_double();
        const double mag = sigma * std::sqrt(-std::log(u1));
        return {mag * std::cos(2.0 * kPi * u2), mag * std::sin(2.0 * kPi * u2)};
    }

  private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    static std::uint64_t mix(std::uint64_t z) {
        z += kGamma;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace mcradar
