#pragma once

#include <array>
#include <cstdint>

namespace diamlimit {

/// SplitMix64 step. Used for seeding and for deriving independent
/// stream keys from (master_seed, stream_index).
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Splittable pseudo-random stream: xoshiro256++ whose state is derived
/// from a (master_seed, stream_index) pair via SplitMix64. Two streams
/// with different indices are statistically independent, so replications
/// can be dispatched to worker threads in any order without changing
/// any drawn value. Value type; no global state.
class RngStream {
public:
    explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0) noexcept {
        std::uint64_t key = master_seed;
        std::uint64_t mixed = splitmix64(key);
        key = mixed ^ (0x6a09e667f3bcc909ULL + stream_index);
        state_[0] = splitmix64(key);
        state_[1] = splitmix64(key);
        state_[2] = splitmix64(key);
        state_[3] = splitmix64(key);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in the open interval (0, 1); never returns 0 or 1,
    /// so logs and inverse-CDF transforms are safe.
    double uniform01() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * uniform01();
    }

    // UniformRandomBitGenerator interface, handy for std::shuffle.
    using result_type = std::uint64_t;
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~0ULL; }
    result_type operator()() noexcept { return next(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace diamlimit
