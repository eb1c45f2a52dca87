#pragma once

#include <array>
#include <cstdint>

namespace dqw {

/// Deterministic random stream for one trajectory.
///
/// Output format, version 1:
///   - state seeded by SplitMix64 from mix(mix(seed) ^ trajectory)
///   - generator is xoshiro256**
///   - draw_theta() = (next() >> 11) * 2^-53 * 2pi, folded into [0, 2pi)
///   - draw_bit()   = next() >> 63
/// Everything is integer arithmetic up to the final scaling, so the same
/// (seed, trajectory) yields the same sequence on every IEEE-754 platform.
class RngStream {
  public:
    static constexpr int kVersion = 1;

    RngStream(std::uint64_t seed, std::uint64_t trajectory);

    std::uint64_t next() noexcept;

    // Uniform on [0, 2pi), one draw.
    double draw_theta() noexcept;

    // Fair coin flip, one draw.
    bool draw_bit() noexcept { return (next() >> 63) != 0; }

  private:
    std::array<std::uint64_t, 4> s_{};
};

// SplitMix64 finaliser; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace dqw
