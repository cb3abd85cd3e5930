#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vlp {

/// SplitMix64 finalizer. Used to turn structured seed paths into
/// well-separated 64-bit seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Hashes (master, path...) into a stream seed. Each path element is folded
/// in with one SplitMix64 round, so seeds depend only on the values and never
/// on scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Per-stream generator: std::mt19937_64 seeded with a single 64-bit word.
///
/// Uniform variates take the top 53 bits of one engine output. Gaussian
/// variates use the Marsaglia polar method implemented here (rather than
/// std::normal_distribution, whose algorithm is unspecified), so a stream is
/// bit-identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform();
    /// Uniform on [-1, 1).
    double uniform_signed();
    /// Standard normal.
    double gaussian();
    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace vlp
