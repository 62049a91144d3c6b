#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace freqaug {

/// Seeded mt19937_64 stream. Draws come from raw engine words and repeat
/// across platforms.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi); returns lo exactly when lo == hi.
    double uniform(double lo, double hi) { return lo == hi ? lo : lo + uniform01() * (hi - lo); }

    /// Uniform integer in [lo, hi], by rejection.
    int uniform_int(int lo, int hi);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of an independent substream addressed by `path` under `master`
/// (e.g. {epoch, image index, view index}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

}  // namespace freqaug
