#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dqw/coin.hpp"
#include "dqw/rng.hpp"
#include "dqw/state.hpp"

namespace dqw {

struct ScheduleTerm {
    CoinFieldKind kind;
    std::uint64_t reps = 1;

    friend bool operator==(const ScheduleTerm&, const ScheduleTerm&) = default;
};

/// Sequence of coin-field terms in time order: terms.front() acts first.
///
/// The operator product W2^T2 W1^T1 (W1 applied first) is the schedule
/// {PF(theta)^T1, PD^T2}, written "PF(theta)^T1 ; PD^T2" in the DSL.
struct Schedule {
    std::vector<ScheduleTerm> terms;
    PawlConfig pawl;
    std::uint64_t seed = 0;

    std::uint64_t total_steps() const noexcept;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Throws std::invalid_argument on an empty schedule, zero reps or a bad pawl.
void validate(const Schedule& schedule);

/// One walk step W = S (B(theta(x)) (x) I): coin at every site, then the
/// up component moves x -> x-1 and the down component x -> x+1.
/// Throws WindowError if either outermost window site carries amplitude.
void apply_step(WalkState& state, const ResolvedCoinField& field);
WalkState apply_step(const WalkState& state, const ResolvedCoinField& field);

using StepObserver = std::function<void(const WalkState&)>;

/// Evolves spec through every term of the schedule using
/// RngStream(schedule.seed, trajectory). `observer`, when set, sees the
/// state after each step.
WalkState run_schedule(const InitialSpec& spec, const Schedule& schedule, std::uint64_t trajectory = 0,
                       const StepObserver& observer = {});

}  // namespace dqw
