#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace rwcut {

/// General-purpose engine for everything that is not a per-walk stream.
using Rng = std::mt19937_64;

/// SplitMix64 (Steele, Lea, Flood). Eight bytes of state, so one engine per
/// walk is affordable; streams are keyed by (root seed, walk index).
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state = 0) noexcept : state_(state) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Derives an independent 64-bit seed for sub-stream `index` of `root`.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
    SplitMix64 a(root);
    std::uint64_t k = a() ^ (index * 0xd1b54a32d192ed03ULL);
    SplitMix64 b(k);
    return b();
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace rwcut
