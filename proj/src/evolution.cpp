#include "dqw/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dqw/errors.hpp"

namespace dqw {

namespace {

struct CosSin {
    double c;
    double s;
};

class SiteCoins {
  public:
    explicit SiteCoins(const ResolvedCoinField& field)
        : background_{std::cos(field.background), std::sin(field.background)}, pawl_(field.pawl) {}

    CosSin at(int x) const noexcept {
        if (pawl_) {
            if (x == pawl_->reflect_site) return {0.0, 1.0};
            if (x == pawl_->pass_site) return {1.0, 0.0};
        }
        return background_;
    }

  private:
    CosSin background_;
    std::optional<PawlConfig> pawl_;
};

}  // namespace

std::uint64_t Schedule::total_steps() const noexcept {
    std::uint64_t total = 0;
    for (const auto& t : terms) total += t.reps;
    return total;
}

void validate(const Schedule& schedule) {
    if (schedule.terms.empty()) throw std::invalid_argument("schedule has no terms");
    for (const auto& t : schedule.terms) {
        if (t.reps == 0) throw std::invalid_argument("schedule term with zero repetitions");
    }
    validate(schedule.pawl);
}

void apply_step(WalkState& state, const ResolvedCoinField& field) {
    auto& amps = state.amplitudes();
    const std::size_t n = amps.size();
    if (n < 3 || amps.front().probability() != 0.0 || amps.back().probability() != 0.0) {
        throw WindowError("walker reached the edge of window [" + std::to_string(state.window().lo) + ", " +
                          std::to_string(state.window().hi) + "] at step " + std::to_string(state.step()));
    }

    const SiteCoins coins(field);
    std::vector<Spinor> next(n);
    const int lo = state.window().lo;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const auto [c, s] = coins.at(lo + static_cast<int>(i));
        const double ur = amps[i].up.real(), ui = amps[i].up.imag();
        const double dr = amps[i].down.real(), di = amps[i].down.imag();
        // [[c, -is], [-is, c]] applied to (u, d), written out so that the
        // parity image of a site performs the same floating-point sums.
        next[i - 1].up = Complex{c * ur + s * di, c * ui - s * dr};
        next[i + 1].down = Complex{s * ui + c * dr, c * di - s * ur};
    }
    amps.swap(next);
    state.advance_step();
}

WalkState apply_step(const WalkState& state, const ResolvedCoinField& field) {
    WalkState out = state;
    apply_step(out, field);
    return out;
}

WalkState run_schedule(const InitialSpec& spec, const Schedule& schedule, std::uint64_t trajectory,
                       const StepObserver& observer) {
    validate(schedule);
    WalkState state = new_state(spec, schedule.total_steps());
    RngStream rng(schedule.seed, trajectory);
    for (const auto& term : schedule.terms) {
        for (std::uint64_t r = 0; r < term.reps; ++r) {
            apply_step(state, resolve_coin_field(term.kind, schedule.pawl, rng));
            if (observer) observer(state);
        }
    }
    return state;
}

}  // namespace dqw
