#include <doctest.h>

#include <cmath>
#include <random>

#include "common.hpp"
#include "uavjam/traj_opt.hpp"

using namespace uavjam;

namespace {

double rel_slack(double v) { return 1e-12 * std::max(1.0, std::abs(v)); }

} // namespace

TEST_CASE("trajectory surrogate is tangent at the reference") {
    const SystemModel m(Scenario::table1());
    std::mt19937_64 rng(4);
    for (int t = 0; t < 3; ++t) {
        const SolutionState st = testing::random_state(m, rng);
        const TrajSurrogate sur(st.trajectory, st, m);
        CHECK(std::abs(sur.numerator(st.trajectory) - sur.model_numerator(st.trajectory)) <= 1e-9);
        CHECK(std::abs(sur.denominator(st.trajectory) - sur.model_denominator(st.trajectory)) <= 1e-9);
        CHECK(sur.model_denominator(st.trajectory) == doctest::Approx(see_objective(st, m).total_energy));
    }
}

TEST_CASE("frozen-factor model reproduces the unclipped secrecy sum at the reference") {
    const SystemModel m(Scenario::table1());
    const SolutionState st = initial_state(m);
    const TrajSurrogate sur(st.trajectory, st, m);
    double unclipped = 0.0;
    for (int n = 1; n <= st.n_step(); ++n) unclipped += secrecy_rate_unclipped(st, n, m);
    CHECK(sur.model_numerator(st.trajectory) == doctest::Approx(unclipped * m.scenario().dt()).epsilon(1e-10));
}

TEST_CASE("trajectory surrogate bounds the model at random feasible points") {
    const SystemModel m(Scenario::table1());
    const Scenario& s = m.scenario();
    const SolutionState st = initial_state(m);
    const TrajSurrogate sur(st.trajectory, st, m);
    std::mt19937_64 rng(8);
    int violations = 0;
    for (int t = 0; t < 100; ++t) {
        const Trajectory q = testing::random_trajectory(s, rng, 30.0);
        const double mn = sur.model_numerator(q), md = sur.model_denominator(q);
        if (sur.numerator(q) > mn + rel_slack(mn)) ++violations;
        if (sur.denominator(q) < md - rel_slack(md)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("projection pins endpoints and restores step feasibility") {
    const Scenario s = Scenario::table1();
    Trajectory q = straight_line(s);
    q[10].y() += 40.0;
    q[11].x() -= 25.0;
    REQUIRE(project_trajectory(q, s, 200, 1e-9));
    CHECK(q.front() == s.q_i);
    CHECK(q.back() == s.q_f);
    for (std::size_t i = 1; i < q.size(); ++i) {
        CHECK((q[i] - q[i - 1]).norm() <= s.step_radius() + 1e-9);
        CHECK(q[i].z() == s.h_j);
    }
}

TEST_CASE("trajectory Dinkelbach is monotone and the block never lowers the SEE") {
    const SystemModel m(testing::small_scenario());
    const SolutionState st = initial_state(m);
    const double before = see_objective(st, m).see;
    const TrajResult r = optimize_trajectory(st, m);
    CHECK(see_objective(r.state, m).see >= before);
    CHECK(feasibility_violations(r.state, m.scenario()).empty());
    for (const auto& run : r.dinkelbach_runs) {
        for (std::size_t i = 1; i < run.lambdas.size(); ++i) CHECK(run.lambdas[i] >= run.lambdas[i - 1]);
        CHECK(run.residual < 1e-6);
    }
}

TEST_CASE("trajectory moves per SCA iteration stay inside the trust radius") {
    const SystemModel m(testing::small_scenario());
    const SolutionState st = initial_state(m);
    TrajConfig cfg;
    cfg.sca_iters = 1;
    const TrajResult r = optimize_trajectory(st, m, cfg);
    for (std::size_t i = 0; i < st.trajectory.size(); ++i)
        CHECK((r.state.trajectory[i] - st.trajectory[i]).norm() <= cfg.trust_radius + 1e-9);
}
