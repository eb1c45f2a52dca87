#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "dqw/coin.hpp"
#include "dqw/errors.hpp"
#include "dqw/evolution.hpp"
#include "dqw/observables.hpp"
#include "dqw/rng.hpp"
#include "oracle.hpp"

using namespace dqw;

namespace {

constexpr double kPi = std::numbers::pi;

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

const ResolvedCoinField kUniformPiOver4{kPi / 4, std::nullopt};

}  // namespace

TEST_CASE("coin_matrix matches B(theta) at reference angles") {
    const auto id = coin_matrix(0.0);
    CHECK(id(0, 0) == Complex{1, 0});
    CHECK(id(0, 1) == Complex{0, 0});
    CHECK(id(1, 0) == Complex{0, 0});
    CHECK(id(1, 1) == Complex{1, 0});

    const auto flip = coin_matrix(kPi / 2);
    CHECK(close(flip(0, 0), {0, 0}, 1e-15));
    CHECK(close(flip(0, 1), {0, -1}, 1e-15));
    CHECK(close(flip(1, 0), {0, -1}, 1e-15));
    CHECK(close(flip(1, 1), {0, 0}, 1e-15));

    const double h = std::sqrt(2.0) / 2;
    const auto q = coin_matrix(kPi / 4);
    CHECK(close(q(0, 0), {h, 0}, 1e-15));
    CHECK(close(q(0, 1), {0, -h}, 1e-15));
    CHECK(close(q(1, 1), {h, 0}, 1e-15));
}

TEST_CASE("coin_matrix is unitary") {
    for (double theta = 0.0; theta < 2 * kPi; theta += 0.137) {
        const auto m = coin_matrix(theta);
        const auto p = m * adjoint(m);
        CHECK(close(p(0, 0), 1.0, 1e-14));
        CHECK(close(p(1, 1), 1.0, 1e-14));
        CHECK(close(p(0, 1), 0.0, 1e-14));
        CHECK(close(p(1, 0), 0.0, 1e-14));
    }
}

TEST_CASE("draw_theta range, determinism and zero mean of cos") {
    RngStream a(7, 3), b(7, 3), other(7, 4);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.draw_theta();
        CHECK(x >= 0.0);
        CHECK(x < 2 * kPi);
        CHECK(x == b.draw_theta());
        differs |= (x != other.draw_theta());
    }
    CHECK(differs);

    RngStream r(12345, 0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += std::cos(r.draw_theta());
    CHECK(std::abs(sum / n) < 0.02);
}

TEST_CASE("rng output is pinned (version 1)") {
    // Frozen from the first run of this generator; a change here breaks
    // reproducibility of every stored experiment.
    RngStream r(0, 0);
    CHECK(r.next() == 0x99ec5f36cb75f2b4ULL);
    CHECK(r.next() == 0xbf6e1f784956452aULL);
    CHECK(r.next() == 0x1a5f849d4933e6e0ULL);
    RngStream q(42, 7);
    CHECK(q.draw_theta() == 0.49462621016339792);
    CHECK(q.draw_theta() == 4.0999269048504576);
    CHECK(RngStream::kVersion == 1);
}

TEST_CASE("resolve_coin_field") {
    RngStream rng(1, 0);
    RngStream mirror(1, 0);
    const PawlConfig pawl;

    SUBCASE("fixed consumes no draw") {
        const auto f = resolve_coin_field(CoinFieldKind::fixed(kPi / 4), pawl, rng);
        for (int x = -5; x <= 5; ++x) CHECK(f.theta_at(x) == doctest::Approx(kPi / 4));
        CHECK(rng.next() == mirror.next());
    }
    SUBCASE("pawl with fixed background") {
        const auto f = resolve_coin_field(CoinFieldKind::pawl_fixed(kPi / 30), pawl, rng);
        CHECK(f.theta_at(-1) == kPi / 2);
        CHECK(f.theta_at(0) == 0.0);
        CHECK(f.theta_at(1) == doctest::Approx(kPi / 30));
        CHECK(f.theta_at(-7) == doctest::Approx(kPi / 30));
    }
    SUBCASE("pawl with disordered background draws exactly once") {
        const auto f = resolve_coin_field(CoinFieldKind::pawl_disordered(), pawl, rng);
        const double theta_t = mirror.draw_theta();
        CHECK(f.theta_at(-1) == kPi / 2);
        CHECK(f.theta_at(0) == 0.0);
        CHECK(f.theta_at(3) == theta_t);
        CHECK(f.theta_at(-4) == theta_t);
        CHECK(rng.next() == mirror.next());
    }
    SUBCASE("disordered draws once, same angle at all sites") {
        const auto f = resolve_coin_field(CoinFieldKind::disordered(), pawl, rng);
        const double theta_t = mirror.draw_theta();
        CHECK(f.theta_at(-1) == theta_t);
        CHECK(f.theta_at(0) == theta_t);
        CHECK(f.theta_at(9) == theta_t);
    }
    SUBCASE("mixed: flip first, then theta only for PD") {
        for (int i = 0; i < 50; ++i) {
            const auto f = resolve_coin_field(CoinFieldKind::pawl_mixed(kPi / 6), pawl, rng);
            const bool pf = mirror.draw_bit();
            const double expected = pf ? fold_angle(kPi / 6) : mirror.draw_theta();
            CHECK(f.theta_at(5) == expected);
            CHECK(f.theta_at(-1) == kPi / 2);
        }
    }
    SUBCASE("custom pawl sites") {
        const auto f = resolve_coin_field(CoinFieldKind::pawl_fixed(0.2), PawlConfig{4, 7}, rng);
        CHECK(f.theta_at(4) == kPi / 2);
        CHECK(f.theta_at(7) == 0.0);
        CHECK(f.theta_at(-1) == doctest::Approx(0.2));
    }
}

TEST_CASE("pawl config validation") {
    CHECK_THROWS_AS(validate(PawlConfig{2, 2}), std::invalid_argument);
    CHECK_NOTHROW(validate(PawlConfig{}));
}

TEST_CASE("apply_step hand-computed cases") {
    const double h = 1.0 / std::sqrt(2.0);

    SUBCASE("identity coin is a pure shift") {
        const auto s = apply_step(new_state({0, coin::Symmetric{}}, 1), ResolvedCoinField{0.0, std::nullopt});
        CHECK(s.step() == 1);
        CHECK(close(s.at(-1).up, {h, 0}, 1e-15));
        CHECK(close(s.at(1).down, {h, 0}, 1e-15));
        CHECK(s.at(-1).down == Complex{});
        CHECK(s.at(1).up == Complex{});
        CHECK(s.at(0).probability() == 0.0);
    }
    SUBCASE("theta = pi/4 from symmetric") {
        const auto s = apply_step(new_state({0, coin::Symmetric{}}, 1), kUniformPiOver4);
        CHECK(close(s.at(-1).up, {0.5, -0.5}, 1e-15));
        CHECK(close(s.at(1).down, {0.5, -0.5}, 1e-15));
        CHECK(s.at(-1).probability() == doctest::Approx(0.5));
        CHECK(s.at(1).probability() == doctest::Approx(0.5));
    }
    SUBCASE("pawl two-cycle from up at the pass site") {
        for (double theta : {0.0, 0.3, kPi / 30, 2.0}) {
            auto s = new_state({0, coin::Up{}}, 2);
            const ResolvedCoinField f{theta, PawlConfig{}};
            apply_step(s, f);
            CHECK(close(s.at(-1).up, {1, 0}, 1e-15));
            apply_step(s, f);
            CHECK(close(s.at(0).down, {0, -1}, 1e-15));
            CHECK(s.at(0).up == Complex{});
            CHECK(std::abs(norm(s) - 1.0) < 1e-15);
        }
    }
    SUBCASE("down at -2 is reflected back by the pawl") {
        // Background theta = 0 keeps the walker on the marked path.
        auto s = new_state({-2, coin::Down{}}, 2);
        const ResolvedCoinField f{0.0, PawlConfig{}};
        apply_step(s, f);
        CHECK(close(s.at(-1).down, {1, 0}, 1e-15));
        apply_step(s, f);
        CHECK(close(s.at(-2).up, {0, -1}, 1e-15));
    }
}

TEST_CASE("apply_step refuses to touch the window edge") {
    auto s = new_state({0, coin::Symmetric{}}, 1);
    apply_step(s, kUniformPiOver4);
    apply_step(s, kUniformPiOver4);  // support now touches the edge
    CHECK_THROWS_AS(apply_step(s, kUniformPiOver4), WindowError);
}

TEST_CASE("pawl two-cycle holds for disordered draws") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Schedule sched{{{CoinFieldKind::pawl_disordered(), 2}}, {}, seed};
        const auto s = run_schedule({0, coin::Up{}}, sched);
        CHECK(close(s.at(0).down, {0, -1}, 1e-15));
    }
}

TEST_CASE("unitarity per step") {
    Schedule sched{{{CoinFieldKind::disordered(), 300}, {CoinFieldKind::pawl_mixed(0.4), 300}}, {}, 9};
    double prev = 1.0;
    run_schedule({0, coin::Custom{{0.6, 0.0}, {0.0, 0.8}}}, sched, 0, [&](const WalkState& s) {
        const double n = norm(s);
        REQUIRE(std::abs(n - prev) < 1e-12);
        prev = n;
    });
    CHECK(std::abs(prev - 1.0) < 1e-10);
}

TEST_CASE("parity symmetry without pawl, every step and seed") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Schedule sched{{{CoinFieldKind::fixed(0.7), 40}, {CoinFieldKind::disordered(), 160}}, {}, seed};
        run_schedule({0, coin::Symmetric{}}, sched, seed, [](const WalkState& s) {
            REQUIRE(symmetry_defect(s) < 1e-12);
            REQUIRE(std::abs(position_mean(s)) < 1e-9);
        });
    }
}

TEST_CASE("run_schedule applies terms first-acts-first") {
    Schedule forward{{{CoinFieldKind::pawl_fixed(0.0), 1}, {CoinFieldKind::fixed(kPi / 2), 1}}, {}, 0};
    const auto s = run_schedule({0, coin::Up{}}, forward);
    // step 1: pass site identity, up -> x=-1; step 2: B(pi/2) flips to down, x=0
    CHECK(close(s.at(0).down, {0, -1}, 1e-15));

    Schedule reversed{{{CoinFieldKind::fixed(kPi / 2), 1}, {CoinFieldKind::pawl_fixed(0.0), 1}}, {}, 0};
    const auto r = run_schedule({0, coin::Up{}}, reversed);
    // step 1: B(pi/2) flips to down, x=+1; step 2: background 0, moves to x=+2
    CHECK(close(r.at(2).down, {0, -1}, 1e-15));

    int calls = 0;
    run_schedule({0, coin::Up{}}, forward, 0, [&](const WalkState& st) { CHECK(st.step() == ++calls); });
    CHECK(calls == 2);
}

TEST_CASE("run_schedule rejects malformed schedules") {
    CHECK_THROWS_AS(run_schedule({}, Schedule{}), std::invalid_argument);
    CHECK_THROWS_AS(run_schedule({}, Schedule{{{CoinFieldKind::disordered(), 0}}, {}, 0}), std::invalid_argument);
}

TEST_CASE("determinism: same seed gives bitwise-identical mean trajectory") {
    Schedule sched{{{CoinFieldKind::pawl_disordered(), 150}}, {}, 77};
    std::vector<double> a, b;
    run_schedule({0, coin::Symmetric{}}, sched, 5, [&](const WalkState& s) { a.push_back(position_mean(s)); });
    run_schedule({0, coin::Symmetric{}}, sched, 5, [&](const WalkState& s) { b.push_back(position_mean(s)); });
    CHECK(a == b);
}

TEST_CASE("engine matches the dense Kronecker oracle") {
    const double theta = kPi / 5;
    const std::vector<CoinFieldKind> kinds{CoinFieldKind::fixed(theta), CoinFieldKind::disordered(),
                                           CoinFieldKind::pawl_fixed(theta), CoinFieldKind::pawl_disordered()};
    for (const auto& kind : kinds) {
        for (std::uint64_t seed : {3u, 11u}) {
            // Window [-10, 10] from a start at 0 admits 9 steps; check t <= 8.
            auto state = new_state({0, coin::Symmetric{}}, 9);
            REQUIRE(state.window() == SiteRange{-10, 10});
            Eigen::VectorXcd ref = oracle::to_vector(state);
            RngStream engine_rng(seed, 0), oracle_rng(seed, 0);
            for (int t = 1; t <= 8; ++t) {
                apply_step(state, resolve_coin_field(kind, PawlConfig{}, engine_rng));
                double background = theta;
                if (kind.type() == CoinFieldKind::Type::Disordered ||
                    kind.type() == CoinFieldKind::Type::PawlDisordered) {
                    background = oracle_rng.draw_theta();
                }
                const bool pawl = kind.has_pawl();
                const auto w = oracle::step_matrix(
                    -10, 10, [&](int x) { return pawl ? oracle::pawl_theta(x, background) : background; });
                REQUIRE(w.rows() == 42);
                ref = w * ref;
                const auto got = oracle::to_vector(state);
                REQUIRE((got - ref).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}
