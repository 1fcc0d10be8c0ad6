#pragma once

#include <cstdint>

namespace ddmag {

// Independent random streams drawn for each realization.
enum class Stream : std::uint64_t {
    Noise = 1,
    Lattice = 2,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for realization `index` of `stream` under `master`. Pure function of
/// its arguments, so a realization reproduces regardless of which worker
/// runs it or in what order.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                                           std::uint64_t index) noexcept {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
    return splitmix64(h ^ index);
}

} // namespace ddmag
