// Counter-seeded random streams for the Monte Carlo samplers.
//
// Every sample draws from its own stream, keyed by (master seed, stream
// index).  A stream is a pure function of that pair, so ensembles are
// reproducible bit-for-bit no matter how samples are scheduled across
// worker threads.
//
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <cstdint>

namespace bridgeloe {

namespace detail {

// splitmix64 step; used only to expand the (seed, index) pair into an
// initial xoshiro state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// xoshiro256++ generator with Box-Muller normal variates.  The state is
// seeded through splitmix64 so that nearby (seed, index) pairs still give
// statistically independent streams.
class rng_stream {
  public:
    rng_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t sm = master_seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1);
        for (int i = 0; i < 4; ++i) s_[i] = detail::splitmix64(sm);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl64(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with the full 53 bits of mantissa.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the paired variate is cached so the
    // trigonometric work is shared between consecutive draws.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // 1 - u keeps the argument of log strictly positive.
        const double u1 = 1.0 - next_uniform();
        const double u2 = next_uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace bridgeloe
