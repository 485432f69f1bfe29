#include <doctest.h>

#include <cmath>
#include <random>

#include "common.hpp"
#include "uavjam/angle_opt.hpp"

using namespace uavjam;

TEST_CASE("central differences are exact on quadratics") {
    auto f = [](const Orientation& o) { return 3.0 * o.phi_x * o.phi_x - 2.0 * o.phi_x * o.phi_z + o.phi_z; };
    const AngleBox box{-1.0, 1.0, -1.0, 1.0};
    const Eigen::Vector2d g = fd_gradient(f, Orientation{0.3, -0.2}, 1e-5, box);
    CHECK(g(0) == doctest::Approx(6 * 0.3 + 2 * 0.2).epsilon(1e-9));
    CHECK(g(1) == doctest::Approx(-2 * 0.3 + 1).epsilon(1e-9));
    const Eigen::Vector2d gp = fd_gradient(f, Orientation{0.3, -0.2}, 1e-5, box, Exec::Parallel);
    CHECK(g == gp);
}

TEST_CASE("finite-difference error shrinks quadratically") {
    auto f = [](const Orientation& o) { return std::sin(2.0 * o.phi_x) * std::cos(o.phi_z); };
    const AngleBox box{-1.0, 1.0, -1.0, 1.0};
    const Orientation at{0.4, 0.3};
    const double exact = 2.0 * std::cos(0.8) * std::cos(0.3);
    const double e1 = std::abs(fd_gradient(f, at, 1e-2, box)(0) - exact);
    const double e2 = std::abs(fd_gradient(f, at, 5e-3, box)(0) - exact);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("one-sided differences at the box edge") {
    auto f = [](const Orientation& o) { return o.phi_x * o.phi_x; };
    const AngleBox box{0.0, 1.0, 0.0, 0.0};
    const Eigen::Vector2d g = fd_gradient(f, Orientation{1.0, 0.0}, 1e-4, box);
    CHECK(g(0) == doctest::Approx(2.0 - 1e-4).epsilon(1e-9));
    CHECK(g(1) == 0.0);
}

TEST_CASE("slot boxes respect limits and reachability") {
    const Scenario s = Scenario::table1();
    const SystemModel m(s);
    std::mt19937_64 rng(6);
    const SolutionState st = testing::random_state(m, rng);
    for (int n = 1; n <= st.n_step(); ++n) {
        const AngleBox b = slot_angle_box(st, n, s);
        CHECK(b.lo_x >= -kAngleLimit);
        CHECK(b.hi_x <= kAngleLimit);
        CHECK(b.lo_x <= st.orientations[n - 1].phi_x + 1e-12);
        CHECK(b.hi_x >= st.orientations[n - 1].phi_x - 1e-12);
        const Orientation prev = n == 1 ? kMountOrientation : st.orientations[n - 2];
        CHECK(b.lo_x >= prev.phi_x - max_rotation_x(s) - 1e-12);
        CHECK(b.hi_z <= prev.phi_z + max_rotation_z(s) + 1e-12);
        for (const Orientation& c : seed_candidates(st, n, s, AngleConfig{})) {
            CHECK(c.phi_x >= b.lo_x - 1e-12);
            CHECK(c.phi_x <= b.hi_x + 1e-12);
            CHECK(c.phi_z >= b.lo_z - 1e-12);
            CHECK(c.phi_z <= b.hi_z + 1e-12);
        }
    }
}

TEST_CASE("angle block never lowers the SEE and stays feasible") {
    const SystemModel m(testing::small_scenario());
    const SolutionState st = initial_state(m);
    const double before = see_objective(st, m).see;
    const AngleResult r = optimize_angles(st, m);
    CHECK(see_objective(r.state, m).see >= before);
    CHECK(feasibility_violations(r.state, m.scenario()).empty());
    AngleConfig par;
    par.exec = Exec::Parallel;
    const AngleResult rp = optimize_angles(st, m, par);
    CHECK(see_objective(rp.state, m).see == see_objective(r.state, m).see);
}

TEST_CASE("single-slot SEE replacement matches a full evaluation") {
    const SystemModel m(testing::small_scenario());
    SolutionState st = initial_state(m);
    const Orientation o{0.1, -0.05};
    const double quick = see_with_orientation(st, 3, o, m);
    st.orientations[2] = o;
    CHECK(quick == doctest::Approx(see_objective(st, m).see).epsilon(1e-12));
}
