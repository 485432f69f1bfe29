#include <doctest.h>

#include <algorithm>
#include <random>

#include "uavjam/channel.hpp"
#include "uavjam/errors.hpp"
#include "uavjam/radio_metrics.hpp"

using namespace uavjam;

TEST_CASE("reference path loss at 28 GHz") {
    const Scenario s = Scenario::table1();
    CHECK(s.beta0() == doctest::Approx(7.2695e-7).epsilon(1e-4));
    CHECK(path_loss(1.0, 2.8, 28e9) == doctest::Approx(s.beta0()));
    CHECK(path_loss(10.0, 2.0, 28e9) == doctest::Approx(s.beta0() / 100.0));
    CHECK_THROWS_AS(path_loss(0.0, 2.0, 28e9), ValidationError);
}

TEST_CASE("channel norm equals path gain times array size") {
    const Scenario s = Scenario::table1();
    const ChannelVec c = channel({0, 0, 50}, {30, 40, 0}, {0.2, -0.1}, ma_array(s), 2.8, s.frequency);
    CHECK(c.h.squaredNorm() == doctest::Approx(16.0 * c.path_loss));
    CHECK(c.distance == doctest::Approx(std::sqrt(900.0 + 1600.0 + 2500.0)));
}

TEST_CASE("doubling the grid resolution yields a superset") {
    const Vec3 c(150, 100, 0);
    const auto g8 = uncertainty_grid(c, 50.0, 8);
    const auto g16 = uncertainty_grid(c, 50.0, 16);
    for (const Vec3& p : g8) {
        CHECK((p - c).head<2>().norm() <= 50.0 + 1e-9);
        const bool found =
            std::any_of(g16.begin(), g16.end(), [&](const Vec3& q) { return (p - q).norm() < 1e-9; });
        CHECK(found);
    }
}

TEST_CASE("worst-case eve gains bracket the disc") {
    const Scenario s = Scenario::table1();
    const Vec3 q(0, 0, 50);
    const EveGainBounds b = worst_case_eve_gains(q, s);
    for (const Vec3& p : uncertainty_grid(s.q_e, s.epsilon, 16)) {
        CHECK(path_loss((p - s.q_b).norm(), s.alpha_be, s.frequency) <= b.h_be * (1 + 1e-12));
        CHECK(path_loss((p - q).norm(), s.alpha_je, s.frequency) >= b.h_je * (1 - 1e-12));
    }
    Scenario bad = s;
    bad.q_e = Vec3(10, 0, 0);
    CHECK_THROWS_AS(worst_case_eve_gains(q, bad), InfeasibleScenarioError);
}

TEST_CASE("eve oracle and jamming gain: serial and parallel agree bitwise") {
    const Scenario s = Scenario::table1();
    const SystemModel m(s);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 5; ++t) {
        const Vec3 q(100 * u(rng), 100 * u(rng), 50);
        const Orientation o{u(rng), u(rng)};
        const ComplexVec w = mrt_beam(m.slot_channels(q, o).je.h);
        CHECK(eve_rate_oracle(q, o, w, m.bs_beam(), s, 16, Exec::Serial) ==
              eve_rate_oracle(q, o, w, m.bs_beam(), s, 16, Exec::Parallel));
        const auto grid = uncertainty_grid(s.q_e, s.epsilon, 16);
        CHECK(min_jamming_array_gain(q, o, w, grid, s, Exec::Serial) ==
              min_jamming_array_gain(q, o, w, grid, s, Exec::Parallel));
    }
}

TEST_CASE("jamming gain over an empty grid is rejected") {
    const Scenario s = Scenario::table1();
    CHECK_THROWS_AS(min_jamming_array_gain({0, 0, 50}, {}, ComplexVec::Ones(16), {}, s), ValidationError);
}

TEST_CASE("bound mode names round-trip") {
    for (EveBoundMode m : {EveBoundMode::Nominal, EveBoundMode::PathOnly, EveBoundMode::Rigorous})
        CHECK(parse_bound_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_bound_mode("loose"), ValidationError);
}
