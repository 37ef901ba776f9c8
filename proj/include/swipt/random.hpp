#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace swipt {

/// Derives a child seed from a parent seed and a stream key (SplitMix64
/// finalizer over the pair). Used to give every trial and every RAU its own
/// substream, so realizations do not depend on how many draws other
/// streams consumed.
std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t key) noexcept;

/// Seedable generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// The standard distributions are not (their algorithms are unspecified), so
/// the transforms below are written out explicitly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi]; returns lo when lo == hi.
    double uniform(double lo, double hi);
    /// Standard normal (Box-Muller, second variate discarded).
    double normal();
    /// Circularly-symmetric complex Gaussian, zero mean, E|z|^2 = 1.
    std::complex<double> complex_normal();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace swipt
