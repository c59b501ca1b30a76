#pragma once

#include <complex>
#include <cstdint>

namespace entverify {

/// Deterministic pseudo-random source. Raw bits come from splitmix64 so the
/// stream is identical across standard libraries; Gaussians use Box-Muller on
/// those bits for the same reason.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform();

    /// Standard normal N(0, 1).
    double gaussian();

    /// Complex with independent N(0,1) real and imaginary parts.
    std::complex<double> complex_gaussian();

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Counter-based seed splitter: all randomness in the artifact flows from one
/// master seed through this.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

} // namespace entverify
