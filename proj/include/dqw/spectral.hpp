#pragma once

#include <array>
#include <cstdint>

#include "dqw/coin.hpp"
#include "dqw/rng.hpp"

namespace dqw {

// Units: lattice spacing, step time and hbar are all 1.

struct Bands {
    double e_plus;
    double e_minus;
};

struct GroupVelocity {
    double vg_plus;
    double vg_minus;
    // True when (theta, k) sits on the Dirac point (cos^2 theta cos^2 k == 1)
    // and the returned value is the one-sided limit from inside the zone.
    bool limit = false;
};

struct DispersionPoint {
    double k;
    double e_plus;
    double e_minus;
    double vg_plus;
    double vg_minus;
};

/// E(k) = +-arccos(cos theta cos k). Throws std::domain_error for k outside [-pi, pi].
Bands dispersion(double theta, double k);

/// v = dE+/dk = cos theta sin k / sqrt(1 - cos^2 theta cos^2 k).
///
/// At the Dirac points the denominator vanishes; there the result is
/// sign(cos theta) * sign(k) (the inner limit) for k != 0, and 0 at k == 0,
/// with `limit` set.
GroupVelocity group_velocity(double theta, double k);

DispersionPoint dispersion_point(double theta, double k);

/// 2x2 momentum-space block of one walk step: diag(e^{ik}, e^{-ik}) B(theta).
/// Up-movers (x -> x-1) carry e^{+ik}. Its eigenvalues are e^{-+i E+(k)}.
CoinMatrix momentum_step_matrix(double theta, double k);

// Eigenphases of a 2x2 unitary in (-pi, pi], from its closed-form eigenvalues.
std::array<double, 2> eigenphases(const CoinMatrix& u);

/// Mean of vg_plus(theta_i, k) over the grid theta_i = 2 pi i / n_samples.
/// Throws std::invalid_argument for n_samples < 2.
double averaged_group_velocity(double k, std::uint64_t n_samples);

struct MonteCarloEstimate {
    double mean;
    double standard_error;
};

// Same average with theta drawn from `rng`.
MonteCarloEstimate averaged_group_velocity_mc(double k, std::uint64_t n_samples, RngStream& rng);

/// Ballistic front after t steps: t * max_k |vg_plus| = t |cos theta|.
double max_spread(double theta, std::uint64_t t);

}  // namespace dqw
