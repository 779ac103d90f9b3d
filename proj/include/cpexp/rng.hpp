#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace cpexp {

// Philox4x32-10 counter-based generator (Salmon et al. constants).  Chosen
// so that every path owns an independent, reproducible stream addressed by
// (seed, stream index) with no state to hand between threads.
struct Philox4x32 {
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t mult_a = 0xD2511F53u;
    static constexpr std::uint32_t mult_b = 0xCD9E8D57u;
    static constexpr std::uint32_t weyl_a = 0x9E3779B9u;
    static constexpr std::uint32_t weyl_b = 0xBB67AE85u;

    static Block encrypt(Block x, Key k) {
        for (int round = 0;; ++round) {
            const std::uint64_t p0 = std::uint64_t(mult_a) * x[0];
            const std::uint64_t p1 = std::uint64_t(mult_b) * x[2];
            x = {std::uint32_t(p1 >> 32) ^ x[1] ^ k[0], std::uint32_t(p1),
                 std::uint32_t(p0 >> 32) ^ x[3] ^ k[1], std::uint32_t(p0)};
            if (round == 9) return x;
            k[0] += weyl_a;
            k[1] += weyl_b;
        }
    }
};

// One stream of the counter generator plus the handful of scalar draws the
// samplers need.  mirror flips the down/up direction draw only, pairing a
// path with its antithetic twin on identical jump sizes and waiting times.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t stream, bool mirror = false)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
          stream_{std::uint32_t(stream), std::uint32_t(stream >> 32)},
          mirror_(mirror) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = Philox4x32::encrypt(
                {std::uint32_t(block_), std::uint32_t(block_ >> 32), stream_[0], stream_[1]},
                {key_[0], key_[1]});
            ++block_;
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on (0, 1]: 53 random bits, zero excluded so logs are safe.
    double uniform() {
        return double((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Direction draw; antithetic twins see the reflected value.
    double direction_uniform() {
        const double u = uniform();
        return mirror_ ? 1.0 - u : u;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    bool mirror() const { return mirror_; }

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> stream_;
    std::uint64_t block_ = 0;
    Philox4x32::Block buf_{};
    int pos_ = 4;
    bool mirror_;
};

}
