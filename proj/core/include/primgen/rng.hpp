#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "primgen/errors.hpp"

namespace primgen {

// Counter-based random stream (Philox4x32-10). A stream is a pure function
// of (seed, stream id): block j of stream s under seed k is
// philox(key = k, counter = {j, s}), so any image index can be regenerated
// in isolation and the draw sequence never depends on scheduling order.
class RandomStream {
public:
    RandomStream() : RandomStream(0, 0) {}
    RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_id_(stream_id) {}

    std::uint32_t next_u32() {
        if (buffered_ == 0) refill();
        return block_[4 - buffered_--];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform in [0, n). Multiply-shift map; bias is below n / 2^64.
    std::uint64_t uniform_int(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller. Two uniforms per draw, no cached
    // second value, so the consumption pattern stays obvious.
    double next_normal() {
        double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::uint64_t stream_id() const { return stream_id_; }

    // Raw 4x32 block for a given counter, exposed for the known-answer tests.
    static std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                                   std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = 0xD2511F53ull * ctr[0];
            const std::uint64_t p1 = 0xCD9E8D57ull * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    void refill() {
        block_ = philox4x32({static_cast<std::uint32_t>(counter_),
                             static_cast<std::uint32_t>(counter_ >> 32),
                             static_cast<std::uint32_t>(stream_id_),
                             static_cast<std::uint32_t>(stream_id_ >> 32)},
                            key_);
        ++counter_;
        buffered_ = 4;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_id_ = 0;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int buffered_ = 0;
};

// Independent stream for one image of a dataset.
inline RandomStream derive_stream(std::uint64_t seed, std::uint64_t image_index) {
    return RandomStream(seed, image_index);
}

}  // namespace primgen
