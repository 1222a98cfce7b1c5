#pragma once

#include <cmath>
#include <cstdint>

#include "rovernav/rng.hpp"

namespace rovernav {

namespace detail {

inline double lattice_value(int64_t ix, int64_t iy, uint64_t seed) {
    uint64_t h = splitmix64(static_cast<uint64_t>(ix) * 0x9E3779B97F4A7C15ull ^
                            static_cast<uint64_t>(iy) * 0xC2B2AE3D27D4EB4Full ^ seed);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline double fade(double t) { return t * t * (3.0 - 2.0 * t); }

}  // namespace detail

/// Single-octave value noise on the unit integer lattice, smoothstep
/// interpolated. Returns values in [0, 1).
inline double value_noise(double x, double y, uint64_t seed) {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const int64_t ix = static_cast<int64_t>(fx);
    const int64_t iy = static_cast<int64_t>(fy);
    const double tx = detail::fade(x - fx);
    const double ty = detail::fade(y - fy);
    const double v00 = detail::lattice_value(ix, iy, seed);
    const double v10 = detail::lattice_value(ix + 1, iy, seed);
    const double v01 = detail::lattice_value(ix, iy + 1, seed);
    const double v11 = detail::lattice_value(ix + 1, iy + 1, seed);
    const double a = v00 + (v10 - v00) * tx;
    const double b = v01 + (v11 - v01) * tx;
    return a + (b - a) * ty;
}

/// Fractal sum of value noise, centered to roughly [-1, 1].
/// base_wavelength is the period of the first octave in meters.
inline double fbm(double x, double y, uint64_t seed, int octaves, double base_wavelength) {
    double sum = 0.0;
    double amp = 1.0;
    double amp_total = 0.0;
    double freq = 1.0 / base_wavelength;
    for (int o = 0; o < octaves; ++o) {
        sum += amp * value_noise(x * freq, y * freq, seed + static_cast<uint64_t>(o) * 0x51ED2701ull);
        amp_total += amp;
        amp *= 0.5;
        freq *= 2.0;
    }
    return 2.0 * (sum / amp_total - 0.5);
}

}  // namespace rovernav
