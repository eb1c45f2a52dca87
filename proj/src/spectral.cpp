#include "dqw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dqw {

namespace {

constexpr double kPi = std::numbers::pi;

void check_zone(double k) {
    if (!(k >= -kPi && k <= kPi)) {
        throw std::domain_error("momentum " + std::to_string(k) + " outside [-pi, pi]");
    }
}

double sign(double v) noexcept { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

Bands dispersion(double theta, double k) {
    check_zone(k);
    const double e = std::acos(std::clamp(std::cos(theta) * std::cos(k), -1.0, 1.0));
    return {e, -e};
}

GroupVelocity group_velocity(double theta, double k) {
    check_zone(k);
    const double ct = std::cos(theta);
    const double c = ct * std::cos(k);
    const double gap = 1.0 - c * c;
    if (gap <= 0.0) {
        const double v = (k == 0.0) ? 0.0 : sign(ct) * sign(k);
        return {v, -v, true};
    }
    const double v = ct * std::sin(k) / std::sqrt(gap);
    return {v, -v, false};
}

DispersionPoint dispersion_point(double theta, double k) {
    const auto e = dispersion(theta, k);
    const auto v = group_velocity(theta, k);
    return {k, e.e_plus, e.e_minus, v.vg_plus, v.vg_minus};
}

CoinMatrix momentum_step_matrix(double theta, double k) {
    check_zone(k);
    const Complex up_phase = std::polar(1.0, k);
    const Complex down_phase = std::polar(1.0, -k);
    CoinMatrix m = coin_matrix(theta);
    m(0, 0) *= up_phase;
    m(0, 1) *= up_phase;
    m(1, 0) *= down_phase;
    m(1, 1) *= down_phase;
    return m;
}

std::array<double, 2> eigenphases(const CoinMatrix& u) {
    const Complex half_trace = 0.5 * (u(0, 0) + u(1, 1));
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const Complex root = std::sqrt(half_trace * half_trace - det);
    return {std::arg(half_trace + root), std::arg(half_trace - root)};
}

double averaged_group_velocity(double k, std::uint64_t n_samples) {
    if (n_samples < 2) throw std::invalid_argument("averaged_group_velocity needs at least 2 samples");
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_samples);
        sum += group_velocity(theta, k).vg_plus;
    }
    return sum / static_cast<double>(n_samples);
}

MonteCarloEstimate averaged_group_velocity_mc(double k, std::uint64_t n_samples, RngStream& rng) {
    if (n_samples < 2) throw std::invalid_argument("averaged_group_velocity_mc needs at least 2 samples");
    // Welford
    double mean = 0.0, m2 = 0.0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const double v = group_velocity(rng.draw_theta(), k).vg_plus;
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const double n = static_cast<double>(n_samples);
    return {mean, std::sqrt(m2 / (n - 1.0) / n)};
}

double max_spread(double theta, std::uint64_t t) { return static_cast<double>(t) * std::abs(std::cos(theta)); }

}  // namespace dqw
