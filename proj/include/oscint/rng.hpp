#pragma once

#include <cmath>
#include <cstdint>

namespace oscint {

/// Minimal counter-style PRNG (splitmix64). Hand-rolled so that streams are
/// bit-identical across platforms and standard-library versions; std
/// distributions are implementation-defined and would break the byte-exact
/// reproducibility contract of the experiment CLI.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Standard normal via Box-Muller (no cached spare: two raw draws per
    /// call keep the stream position a pure function of the call count).
    double normal() {
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Deterministic per-task substream: tasks derived from the same seed but
    /// different indices are decorrelated by an extra mixing round.
    static SplitMix64 for_task(std::uint64_t seed, std::uint64_t task_index) {
        SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL + task_index * 0xda942042e4dd58b5ULL));
        SplitMix64 out(mixer.next());
        return out;
    }
};

}  // namespace oscint
