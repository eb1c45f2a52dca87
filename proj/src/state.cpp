#include "dqw/state.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dqw {

namespace {

constexpr double kCustomNormTolerance = 1e-12;

struct CoinAmplitudes {
    Complex up;
    Complex down;
};

CoinAmplitudes resolve_coin(const CoinState& coin) {
    struct Visitor {
        CoinAmplitudes operator()(coin::Symmetric) const {
            const double h = 1.0 / std::sqrt(2.0);
            return {h, h};
        }
        CoinAmplitudes operator()(coin::Up) const { return {1.0, 0.0}; }
        CoinAmplitudes operator()(coin::Down) const { return {0.0, 1.0}; }
        CoinAmplitudes operator()(const coin::Custom& c) const {
            const double n = std::norm(c.a) + std::norm(c.b);
            if (!std::isfinite(n) || std::abs(n - 1.0) > kCustomNormTolerance) {
                throw std::invalid_argument("custom coin state is not normalised: |a|^2 + |b|^2 = " +
                                            std::to_string(n));
            }
            return {c.a, c.b};
        }
    };
    return std::visit(Visitor{}, coin);
}

}  // namespace

WalkState::WalkState(SiteRange window) : window_(window) {
    if (window.hi < window.lo) {
        throw std::invalid_argument("empty lattice window");
    }
    amps_.resize(static_cast<std::size_t>(window.hi - window.lo) + 1);
}

Spinor& WalkState::at(int x) {
    if (!window_.contains(x)) {
        throw std::out_of_range("site " + std::to_string(x) + " outside window");
    }
    return amps_[static_cast<std::size_t>(x - window_.lo)];
}

const Spinor& WalkState::at(int x) const {
    if (!window_.contains(x)) {
        throw std::out_of_range("site " + std::to_string(x) + " outside window");
    }
    return amps_[static_cast<std::size_t>(x - window_.lo)];
}

SiteRange window_for(int position, std::uint64_t max_steps) {
    const auto reach = static_cast<long long>(max_steps) + 1;
    const long long lo = position - reach;
    const long long hi = position + reach;
    if (max_steps > static_cast<std::uint64_t>(std::numeric_limits<int>::max() / 2) ||
        lo < std::numeric_limits<int>::min() || hi > std::numeric_limits<int>::max()) {
        throw std::invalid_argument("step count too large for lattice window");
    }
    return {static_cast<int>(lo), static_cast<int>(hi)};
}

WalkState new_state(const InitialSpec& spec, std::uint64_t max_steps) {
    const auto amps = resolve_coin(spec.coin);
    WalkState state(window_for(spec.position, max_steps));
    auto& s = state.at(spec.position);
    s.up = amps.up;
    s.down = amps.down;
    return state;
}

double norm(const WalkState& state) {
    double total = 0.0;
    for (const auto& s : state.amplitudes()) total += s.probability();
    return total;
}

std::optional<SiteRange> support(const WalkState& state) {
    const auto& amps = state.amplitudes();
    std::optional<SiteRange> out;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (amps[i].probability() > kSupportThreshold) {
            const int x = state.window().lo + static_cast<int>(i);
            if (!out) {
                out = SiteRange{x, x};
            } else {
                out->hi = x;
            }
        }
    }
    return out;
}

}  // namespace dqw
