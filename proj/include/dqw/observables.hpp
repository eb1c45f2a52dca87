#pragma once

#include <array>
#include <cstdint>
#include <map>

#include "dqw/state.hpp"

namespace dqw {

/// Position distribution; sites with P(x) <= kSupportThreshold are omitted.
struct Distribution {
    std::map<int, double> probabilities;

    double at(int x) const;
    double total() const;
};

/// Reduced coin density matrix Tr_x |psi><psi|, stored as its Hermitian parts.
struct ReducedCoinDensity {
    double up_up = 0.0;
    double down_down = 0.0;
    Complex up_down{};  // rho(up, down); rho(down, up) is its conjugate

    Complex operator()(int r, int c) const noexcept;
    double trace() const noexcept { return up_up + down_down; }
    // Ascending eigenvalues from the closed form for 2x2 Hermitian matrices.
    std::array<double, 2> eigenvalues() const noexcept;
};

struct ObservableRecord {
    std::uint64_t t = 0;
    double mean_x = 0.0;
    double sd_x = 0.0;
    double entropy = 0.0;
    double norm = 0.0;
};

Distribution probability_distribution(const WalkState& state);

double position_mean(const WalkState& state);

// sqrt(<x^2> - <x>^2), clamped at 0.
double position_sd(const WalkState& state);

ReducedCoinDensity reduced_coin_density(const WalkState& state);

/// Base-2 von Neumann entropy of the reduced coin state, in [0, 1].
/// Eigenvalues in [-1e-9, 0) are clamped to 0; anything lower throws NumericalError.
double entanglement_entropy(const ReducedCoinDensity& rho);
double entanglement_entropy(const WalkState& state);

// max_x |P(x) - P(-x)|
double symmetry_defect(const WalkState& state);

ObservableRecord measure(const WalkState& state);

// Same statistics from a bare distribution.
double position_mean(const Distribution& dist);
double position_sd(const Distribution& dist);
double symmetry_defect(const Distribution& dist);

}  // namespace dqw
