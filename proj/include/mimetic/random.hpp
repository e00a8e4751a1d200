#pragma once
// Seeded uniform draws. The double conversion is spelled out instead of using
// std::uniform_real_distribution so a seed gives the same numbers everywhere.

#include <cstdint>
#include <random>

namespace mimetic {

using Rng = std::mt19937_64;

// Uniform in [lo, hi).
inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0)
{
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

}  // namespace mimetic
