#ifndef PAGRAPH_RNG_HPP
#define PAGRAPH_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace pagraph {

/**
 * SplitMix64 mixing generator. Used only to expand (seed, stream) pairs
 * into full xoshiro state; not exposed for simulation draws.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/**
 * xoshiro256++ pseudorandom generator with deterministic substreams.
 *
 * Substream derivation (fixed constant of the project): the 256-bit state is
 * the first four outputs of SplitMix64 seeded with
 *     master_seed XOR (0x9E3779B97F4A7C15 * (stream_id + 1)).
 * Distinct stream_ids under one master seed give independent, reproducible
 * streams regardless of scheduling, which is what makes parallel replica
 * runs byte-identical for any worker count.
 */
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    Xoshiro256pp(std::uint64_t master_seed, std::uint64_t stream_id) {
        SplitMix64 mixer(master_seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1)));
        for (auto& word : state_) {
            word = mixer.next();
        }
        // All-zero state is a fixed point of xoshiro; SplitMix64 makes it
        // astronomically unlikely, but guard anyway.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
            state_[0] = 1;
        }
    }

    explicit Xoshiro256pp(std::uint64_t seed) : Xoshiro256pp(seed, 0) {}

    std::uint64_t next() {
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

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, bound); Lemire multiply-with-rejection.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (-bound) % bound;
            while (low < threshold) {
                product = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    // Standard normal via Box–Muller (two uniforms per draw, no cached spare).
    double standard_normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.283185307179586477 * u2);
    }

    // UniformRandomBitGenerator interface.
    std::uint64_t operator()() { return next(); }
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

} // namespace pagraph

#endif // PAGRAPH_RNG_HPP
