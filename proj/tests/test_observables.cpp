#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dqw/errors.hpp"
#include "dqw/evolution.hpp"
#include "dqw/observables.hpp"

using namespace dqw;

namespace {

constexpr double kPi = std::numbers::pi;

// (|up>|-1> + |down>|+1>) / sqrt(2)
WalkState split_state() {
    WalkState s(SiteRange{-3, 3});
    const double h = 1.0 / std::sqrt(2.0);
    s.at(-1).up = h;
    s.at(1).down = h;
    return s;
}

WalkState one_step_pi_over_4() {
    return run_schedule({0, coin::Symmetric{}}, Schedule{{{CoinFieldKind::fixed(kPi / 4), 1}}, {}, 0});
}

}  // namespace

TEST_CASE("probability distribution") {
    const auto fresh = probability_distribution(new_state({0, coin::Symmetric{}}, 3));
    CHECK(fresh.probabilities.size() == 1);
    CHECK(fresh.at(0) == doctest::Approx(1.0).epsilon(1e-15));

    const auto one = probability_distribution(one_step_pi_over_4());
    CHECK(one.probabilities.size() == 2);
    CHECK(one.at(-1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(one.at(1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(one.at(0) == 0.0);

    const auto pawl = run_schedule({0, coin::Up{}}, Schedule{{{CoinFieldKind::pawl_fixed(0.5), 2}}, {}, 0});
    const auto pd = probability_distribution(pawl);
    CHECK(pd.probabilities.size() == 1);
    CHECK(pd.at(0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("position mean and standard deviation") {
    const auto fresh = new_state({4, coin::Up{}}, 3);
    CHECK(position_mean(fresh) == 4.0);
    CHECK(position_sd(fresh) == 0.0);

    const auto s = split_state();
    CHECK(position_mean(s) == doctest::Approx(0.0));
    CHECK(position_sd(s) == doctest::Approx(1.0).epsilon(1e-15));
    const auto d = probability_distribution(s);
    CHECK(position_mean(d) == doctest::Approx(0.0));
    CHECK(position_sd(d) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reduced coin density matrix") {
    const auto fresh = reduced_coin_density(new_state({0, coin::Symmetric{}}, 1));
    CHECK(fresh.up_up == doctest::Approx(0.5));
    CHECK(fresh.down_down == doctest::Approx(0.5));
    CHECK(std::abs(fresh.up_down - Complex{0.5, 0.0}) < 1e-15);
    CHECK(fresh(1, 0) == std::conj(fresh(0, 1)));

    for (const auto& s : {split_state(), one_step_pi_over_4()}) {
        const auto rho = reduced_coin_density(s);
        CHECK(rho.up_up == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(rho.down_down == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(std::abs(rho.up_down) < 1e-15);
    }
}

TEST_CASE("entanglement entropy reference values") {
    CHECK(entanglement_entropy(new_state({0, coin::Symmetric{}}, 1)) == doctest::Approx(0.0));
    CHECK(std::abs(entanglement_entropy(new_state({0, coin::Custom{{0.6, 0}, {0, 0.8}}}, 1))) < 1e-12);
    CHECK(std::abs(entanglement_entropy(split_state()) - 1.0) < 1e-12);
    CHECK(std::abs(entanglement_entropy(one_step_pi_over_4()) - 1.0) < 1e-12);
}

TEST_CASE("entropy rejects corrupted density matrices") {
    ReducedCoinDensity bad;
    bad.up_up = 0.5;
    bad.down_down = 0.5;
    bad.up_down = Complex{0.6, 0.0};  // eigenvalue -0.1
    CHECK_THROWS_AS(entanglement_entropy(bad), NumericalError);

    ReducedCoinDensity rounding;
    rounding.up_up = 1.0 + 5e-10;
    rounding.down_down = -5e-10;
    CHECK(entanglement_entropy(rounding) == doctest::Approx(0.0));
}

TEST_CASE("entropy bounds and phase invariance along walks") {
    Schedule sched{{{CoinFieldKind::pawl_fixed(0.4), 60}, {CoinFieldKind::disordered(), 60}}, {}, 3};
    run_schedule({0, coin::Symmetric{}}, sched, 0, [](const WalkState& s) {
        const double e = entanglement_entropy(s);
        REQUIRE(e >= -1e-12);
        REQUIRE(e <= 1.0 + 1e-12);
        const auto rho = reduced_coin_density(s);
        REQUIRE(std::abs(rho.trace() - 1.0) < 1e-10);
        const auto ev = rho.eigenvalues();
        REQUIRE(ev[0] >= -1e-12);
        REQUIRE(ev[1] <= 1.0 + 1e-12);

        WalkState rotated = s;
        const Complex phase = std::polar(1.0, 0.731);
        for (auto& sp : rotated.amplitudes()) {
            sp.up *= phase;
            sp.down *= phase;
        }
        REQUIRE(std::abs(entanglement_entropy(rotated) - e) < 1e-12);

        const auto dist = probability_distribution(s);
        REQUIRE(std::abs(dist.total() - 1.0) < 1e-9);
        for (const auto& [x, p] : dist.probabilities) REQUIRE(p >= 0.0);
    });
}

TEST_CASE("symmetry defect") {
    CHECK(symmetry_defect(split_state()) == 0.0);
    const auto std_walk = run_schedule({0, coin::Symmetric{}}, Schedule{{{CoinFieldKind::fixed(kPi / 4), 150}}, {}, 0});
    CHECK(symmetry_defect(std_walk) < 1e-12);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto d = run_schedule({0, coin::Symmetric{}}, Schedule{{{CoinFieldKind::disordered(), 150}}, {}, seed});
        CHECK(symmetry_defect(d) < 1e-12);
    }

    const auto pawl = run_schedule({0, coin::Symmetric{}}, Schedule{{{CoinFieldKind::pawl_fixed(kPi / 30), 100}}, {}, 0});
    double peak = 0.0;
    for (const auto& [x, p] : probability_distribution(pawl).probabilities) peak = std::max(peak, p);
    CHECK(symmetry_defect(pawl) > 0.5 * peak);
    CHECK(symmetry_defect(probability_distribution(pawl)) == doctest::Approx(symmetry_defect(pawl)));
}

TEST_CASE("pawl transport is directed and grows") {
    double at50 = 0.0, at100 = 0.0;
    run_schedule({0, coin::Symmetric{}}, Schedule{{{CoinFieldKind::pawl_fixed(kPi / 30), 100}}, {}, 0}, 0,
                 [&](const WalkState& s) {
                     if (s.step() == 50) at50 = position_mean(s);
                     if (s.step() == 100) at100 = position_mean(s);
                 });
    CHECK(at50 > 0.0);
    CHECK(at100 > at50);
}

TEST_CASE("measure collects one record") {
    const auto r = measure(new_state({0, coin::Symmetric{}}, 2));
    CHECK(r.t == 0);
    CHECK(r.mean_x == 0.0);
    CHECK(r.sd_x == 0.0);
    CHECK(r.entropy == doctest::Approx(0.0));
    CHECK(r.norm == doctest::Approx(1.0));
}
