#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace dqw {

using Complex = std::complex<double>;

// Probability below which a site is considered empty when computing support.
inline constexpr double kSupportThreshold = 1e-30;

struct Spinor {
    Complex up{};
    Complex down{};

    double probability() const noexcept { return std::norm(up) + std::norm(down); }
};

// Closed integer interval of lattice sites.
struct SiteRange {
    int lo = 0;
    int hi = 0;

    bool contains(int x) const noexcept { return lo <= x && x <= hi; }
    bool contains(const SiteRange& r) const noexcept { return lo <= r.lo && r.hi <= hi; }
    friend bool operator==(const SiteRange&, const SiteRange&) = default;
};

namespace coin {
struct Symmetric {};
struct Up {};
struct Down {};
struct Custom {
    Complex a;  // |up> amplitude
    Complex b;  // |down> amplitude
};
}  // namespace coin

using CoinState = std::variant<coin::Symmetric, coin::Up, coin::Down, coin::Custom>;

struct InitialSpec {
    int position = 0;
    CoinState coin = coin::Symmetric{};
};

/// Joint coin (x) position state of the walker on a bounded window of sites.
///
/// The window is dense and zero-initialised. Walk steps never wrap: the
/// evolution engine refuses to step a state whose outermost sites carry
/// amplitude, so a window of 2 * max_steps + 3 sites centred on the start
/// position is always large enough for max_steps steps.
class WalkState {
  public:
    // All-zero state over [window.lo, window.hi].
    explicit WalkState(SiteRange window);

    const SiteRange& window() const noexcept { return window_; }
    std::uint64_t step() const noexcept { return step_; }
    std::size_t size() const noexcept { return amps_.size(); }

    Spinor& at(int x);
    const Spinor& at(int x) const;

    // Index-based access, index 0 is window().lo.
    std::vector<Spinor>& amplitudes() noexcept { return amps_; }
    const std::vector<Spinor>& amplitudes() const noexcept { return amps_; }

    void advance_step() noexcept { ++step_; }

  private:
    SiteRange window_;
    std::vector<Spinor> amps_;
    std::uint64_t step_ = 0;
};

// Window large enough to run max_steps steps from `position`.
SiteRange window_for(int position, std::uint64_t max_steps);

/// Fresh normalised state with all amplitude at spec.position.
/// Throws std::invalid_argument if a custom coin is not normalised (1e-12).
WalkState new_state(const InitialSpec& spec, std::uint64_t max_steps);

double norm(const WalkState& state);

// Smallest interval holding all sites with probability > kSupportThreshold;
// std::nullopt for the zero state.
std::optional<SiteRange> support(const WalkState& state);

}  // namespace dqw
