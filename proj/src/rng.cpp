#include "dqw/rng.hpp"

#include <numbers>

namespace dqw {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t trajectory) {
    std::uint64_t sm = mix64(mix64(seed) ^ trajectory);
    for (auto& word : s_) {
        sm += kGolden;
        word = mix64(sm);
    }
}

std::uint64_t RngStream::next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::draw_theta() noexcept {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    const double theta = u * kTwoPi;
    // u * 2pi can round up to 2pi for u within an ulp of 1.
    return theta < kTwoPi ? theta : 0.0;
}

}  // namespace dqw
