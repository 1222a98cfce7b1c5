#pragma once

#include <cstdint>
#include <random>

namespace rovernav {

/// splitmix64 finalizer. Stateless integer hash used for the noise lattice;
/// identical output on every platform.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Deterministic RNG wrapper. mt19937_64 output is standardized, and the
/// uniform mappings below avoid std::uniform_*_distribution, whose sequences
/// are implementation-defined. This keeps generated worlds bit-identical
/// across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        const int span = hi - lo + 1;
        int v = lo + static_cast<int>(uniform() * span);
        return v > hi ? hi : v;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace rovernav
