#ifndef SDR_RNG_HPP
#define SDR_RNG_HPP

#include <cstdint>

namespace sdr {

// Counter-based generator (SplitMix64 finalizer over seed+counter).
// Stateless: the k-th draw for a given seed is the same on every platform
// and independent of how many draws preceded it.

inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of mix64.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(mix64(seed, counter) >> 11) * 0x1.0p-53;
}

}  // namespace sdr

#endif
