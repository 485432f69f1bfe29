#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "uavjam/baselines.hpp"
#include "uavjam/errors.hpp"
#include "uavjam/experiment.hpp"

using namespace uavjam;

namespace {

AOConfig quick_config() {
    AOConfig cfg;
    cfg.max_outer = 4;
    return cfg;
}

// Results are shared across test cases; each method runs once.
const AOResult& result_of(Method m) {
    static const std::vector<AOResult> all = run_methods(
        {Method::Proposed, Method::Fixed, Method::Direct, Method::EveOriented}, testing::small_scenario(),
        quick_config());
    return all[static_cast<std::size_t>(m)];
}

} // namespace

TEST_CASE("config validation") {
    AOConfig cfg;
    cfg.eps_th = 0.0;
    CHECK_THROWS_AS(validate_config(cfg), ValidationError);
    cfg.eps_th = 1e-4;
    cfg.max_outer = 0;
    CHECK_THROWS_AS(validate_config(cfg), ValidationError);
}

TEST_CASE("method names round-trip") {
    for (Method m : {Method::Proposed, Method::Fixed, Method::Direct, Method::EveOriented})
        CHECK(parse_method(to_string(m)) == m);
    CHECK_THROWS_AS(parse_method("random"), ValidationError);
}

TEST_CASE("AO trace is non-decreasing for every method") {
    for (Method m : {Method::Proposed, Method::Fixed, Method::Direct, Method::EveOriented}) {
        const AOResult& r = result_of(m);
        CAPTURE(to_string(m));
        REQUIRE(r.trace.entries.size() >= 2);
        for (std::size_t k = 1; k < r.trace.entries.size(); ++k)
            CHECK(r.trace.entries[k].see >= r.trace.entries[k - 1].see - 1e-9);
        CHECK(feasibility_violations(r.state, testing::small_scenario()).empty());
        CHECK(r.report.see == doctest::Approx(r.trace.entries.back().see));
    }
}

TEST_CASE("AO runs are deterministic") {
    const AOResult again = run_method(Method::Proposed, testing::small_scenario(), quick_config());
    const AOResult& first = result_of(Method::Proposed);
    CHECK(again.report.see == first.report.see);
    CHECK(trajectory_csv(again.state, testing::small_scenario()) ==
          trajectory_csv(first.state, testing::small_scenario()));
}

TEST_CASE("fixed-antenna baseline keeps the mount orientation and spends no actuator energy") {
    const AOResult& r = result_of(Method::Fixed);
    for (const Orientation& o : r.state.orientations) CHECK(o == kMountOrientation);
    CHECK(r.report.e_ma == 0.0);
}

TEST_CASE("direct-path baseline flies the straight line") {
    const Scenario s = testing::small_scenario();
    const AOResult& r = result_of(Method::Direct);
    const auto line = straight_line(s);
    for (std::size_t i = 0; i < line.size(); ++i) CHECK((r.state.trajectory[i] - line[i]).norm() < 1e-12);
    const double v = (s.q_f - s.q_i).norm() / s.t_flight;
    CHECK(r.report.e_prop == doctest::Approx(s.n_step * propulsion_power(v, s.rotor) * s.dt()));
}

TEST_CASE("eve-oriented baseline points at the nominal eve wherever reachable") {
    const Scenario s = testing::small_scenario();
    const AOResult& r = result_of(Method::EveOriented);
    const auto expected = eve_oriented_angles(r.state.trajectory, s);
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(r.state.orientations[i] == expected[i]);
    // once the tracking has caught up, the eve sits on boresight
    const std::size_t last = expected.size();
    const BoresightSolution b = boresight_angles_toward(r.state.trajectory[last], s.q_e);
    if (std::abs(b.orientation.phi_x - expected.back().phi_x) < 1e-12 &&
        std::abs(b.orientation.phi_z - expected.back().phi_z) < 1e-12)
        CHECK(local_direction(r.state.trajectory[last], s.q_e, expected.back()).z() ==
              doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("batch runs return results in job order") {
    AOConfig cfg = quick_config();
    cfg.max_outer = 1;
    cfg.optimize_trajectory = false;
    Scenario a = testing::small_scenario();
    Scenario b = a;
    b.p_j = 5.0;
    const auto out = run_batch({{a, cfg}, {b, cfg}});
    CHECK(out[0].report.see == run(a, cfg).report.see);
    CHECK(out[1].report.see == run(b, cfg).report.see);
}
