#include "dqw/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dqw/errors.hpp"

namespace dqw {

namespace {

constexpr double kEigenvalueFloor = -1e-9;
// Eigenvalues this close to 0 or 1 are round-off of a pure coin marginal.
constexpr double kRoundOff = 1e-15;

struct Moments {
    double mean;
    double sd;
};

template <typename Fn>
Moments moments(Fn&& for_each_site) {
    double m1 = 0.0, m2 = 0.0;
    for_each_site([&](int x, double p) {
        const double xd = static_cast<double>(x);
        m1 += xd * p;
        m2 += xd * xd * p;
    });
    return {m1, std::sqrt(std::max(0.0, m2 - m1 * m1))};
}

Moments state_moments(const WalkState& state) {
    return moments([&](auto&& f) {
        const auto& amps = state.amplitudes();
        for (std::size_t i = 0; i < amps.size(); ++i) f(state.window().lo + static_cast<int>(i), amps[i].probability());
    });
}

Moments dist_moments(const Distribution& dist) {
    return moments([&](auto&& f) {
        for (const auto& [x, p] : dist.probabilities) f(x, p);
    });
}

}  // namespace

double Distribution::at(int x) const {
    const auto it = probabilities.find(x);
    return it == probabilities.end() ? 0.0 : it->second;
}

double Distribution::total() const {
    double sum = 0.0;
    for (const auto& [x, p] : probabilities) sum += p;
    return sum;
}

Complex ReducedCoinDensity::operator()(int r, int c) const noexcept {
    if (r == 0 && c == 0) return up_up;
    if (r == 1 && c == 1) return down_down;
    if (r == 0) return up_down;
    return std::conj(up_down);
}

std::array<double, 2> ReducedCoinDensity::eigenvalues() const noexcept {
    const double half_trace = 0.5 * (up_up + down_down);
    const double half_diff = 0.5 * (up_up - down_down);
    const double r = std::sqrt(half_diff * half_diff + std::norm(up_down));
    return {half_trace - r, half_trace + r};
}

Distribution probability_distribution(const WalkState& state) {
    Distribution dist;
    const auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = amps[i].probability();
        if (p > kSupportThreshold) dist.probabilities.emplace(state.window().lo + static_cast<int>(i), p);
    }
    return dist;
}

double position_mean(const WalkState& state) { return state_moments(state).mean; }
double position_sd(const WalkState& state) { return state_moments(state).sd; }
double position_mean(const Distribution& dist) { return dist_moments(dist).mean; }
double position_sd(const Distribution& dist) { return dist_moments(dist).sd; }

ReducedCoinDensity reduced_coin_density(const WalkState& state) {
    ReducedCoinDensity rho;
    for (const auto& s : state.amplitudes()) {
        rho.up_up += std::norm(s.up);
        rho.down_down += std::norm(s.down);
        rho.up_down += s.up * std::conj(s.down);
    }
    return rho;
}

double entanglement_entropy(const ReducedCoinDensity& rho) {
    double s = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (!std::isfinite(lambda) || lambda < kEigenvalueFloor) {
            throw NumericalError("reduced coin density has eigenvalue " + std::to_string(lambda));
        }
        if (lambda < kRoundOff || lambda > 1.0 - kRoundOff) continue;
        s -= lambda * std::log2(lambda);
    }
    return s;
}

double entanglement_entropy(const WalkState& state) { return entanglement_entropy(reduced_coin_density(state)); }

double symmetry_defect(const WalkState& state) {
    const auto& w = state.window();
    double defect = 0.0;
    for (int x = w.lo; x <= w.hi; ++x) {
        const double mirror = w.contains(-x) ? state.at(-x).probability() : 0.0;
        defect = std::max(defect, std::abs(state.at(x).probability() - mirror));
    }
    return defect;
}

double symmetry_defect(const Distribution& dist) {
    double defect = 0.0;
    for (const auto& [x, p] : dist.probabilities) defect = std::max(defect, std::abs(p - dist.at(-x)));
    return defect;
}

ObservableRecord measure(const WalkState& state) {
    const auto m = state_moments(state);
    return {state.step(), m.mean, m.sd, entanglement_entropy(state), norm(state)};
}

}  // namespace dqw
