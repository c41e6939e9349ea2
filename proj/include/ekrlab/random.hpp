#pragma once

#include <array>
#include <cstdint>

namespace ekrlab {

/// Philox4x32-10 counter-based block cipher (Salmon et al., Random123).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key);
};

/// Identifies one independent random stream: (master seed, trial, substream).
/// Every sampler draws from streams named by these coordinates only, so a
/// trial's output does not depend on which worker runs it or in what order.
struct StreamId {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::uint32_t sub = 0;
};

/// Sequential generator over a single Philox stream. Satisfies
/// UniformRandomBitGenerator, but samplers use the explicit helpers below so
/// results never depend on the standard library's distribution algorithms.
class RandomStream {
public:
    using result_type = std::uint32_t;

    explicit RandomStream(StreamId id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return 0xffffffffU; }

    result_type operator()();
    std::uint64_t next64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1].
    double uniformPositive();
    /// Uniform integer in [0, bound); bound > 0. Lemire's method with rejection.
    std::uint64_t below(std::uint64_t bound);

private:
    void refill();

    Philox4x32::Key key_{};
    Philox4x32::Counter ctr_{};
    std::uint32_t block_index_ = 0;
    Philox4x32::Counter buf_{};
    int pos_ = 4;
};

}  // namespace ekrlab
