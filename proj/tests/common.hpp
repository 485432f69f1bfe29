#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "uavjam/ao_driver.hpp"
#include "uavjam/traj_opt.hpp"

namespace uavjam::testing {

// Ten-slot variant of the reference scenario; keeps optimization tests fast.
inline Scenario small_scenario() {
    Scenario s = Scenario::table1();
    s.q_i = Vec3(-50.0, 0.0, 50.0);
    s.q_f = Vec3(150.0, 0.0, 50.0);
    s.t_flight = 20.0;
    s.n_step = 10;
    return s;
}

// Endpoint-pinned trajectory bent by a random half-sine plus small jitter, projected
// back onto the per-slot speed limit.
inline std::vector<Vec3> random_trajectory(const Scenario& s, std::mt19937_64& rng, double amplitude) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Vec3> q = straight_line(s);
    const double ax = amplitude * u(rng), ay = amplitude * u(rng);
    const double jitter = 0.02 * s.step_radius();
    for (std::size_t i = 1; i + 1 < q.size(); ++i) {
        const double bend = std::sin(std::numbers::pi * static_cast<double>(i) / static_cast<double>(q.size() - 1));
        q[i].x() += ax * bend + jitter * u(rng);
        q[i].y() += ay * bend + jitter * u(rng);
    }
    if (!project_trajectory(q, s, 500, 1e-9)) throw std::runtime_error("random_trajectory: projection failed");
    return q;
}

// Feasible state: random trajectory, random reachable angles, random beams in the unit ball.
inline SolutionState random_state(const SystemModel& m, std::mt19937_64& rng) {
    const Scenario& s = m.scenario();
    SolutionState st = initial_state(m);
    st.trajectory = random_trajectory(s, rng, 30.0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double rx = max_rotation_x(s), rz = max_rotation_z(s);
    Orientation prev = kMountOrientation;
    for (auto& o : st.orientations) {
        o.phi_x = std::clamp(prev.phi_x + rx * u(rng), -kAngleLimit, kAngleLimit);
        o.phi_z = std::clamp(prev.phi_z + rz * u(rng), -kAngleLimit, kAngleLimit);
        prev = o;
    }
    RngStream g(rng());
    for (auto& w : st.beams) {
        w = sample_complex_gaussian(s.n_ma(), g);
        w *= 0.5 * (1.0 + u(rng)) / w.norm();
    }
    return st;
}

} // namespace uavjam::testing
