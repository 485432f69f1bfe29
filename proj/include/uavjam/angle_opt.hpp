#pragma once

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "uavjam/radio_metrics.hpp"

namespace uavjam {

struct AngleConfig {
    double eps_phi = 1e-5;     // rad, finite-difference half-width
    double init_step = 0.1;    // rad, displacement of the first trial step
    double armijo_kappa = 0.1;
    double shrink = 0.5;
    int max_backtracks = 20;
    int max_iter = 50;         // PGD iterations per slot
    int seed_grid = 9;         // per-axis points of the seeding grid over the slot box, 0 = off
    bool seed_eve_boresight = true;
    Exec exec = Exec::Serial;  // finite-difference and seeding evaluations
};

/// Per-axis interval a slot's orientation may take.
struct AngleBox {
    double lo_x, hi_x, lo_z, hi_z;
    Orientation clamp(const Orientation& o) const;
};

/// Finite-difference gradient of f at phi over the box: central where both probes fit
/// inside the box, one-sided otherwise.
template <class F>
Eigen::Vector2d fd_gradient(F&& f, const Orientation& phi, double eps, const AngleBox& box,
                            Exec exec = Exec::Serial) {
    const double lo[2] = {box.lo_x, box.lo_z};
    const double hi[2] = {box.hi_x, box.hi_z};
    const double at[2] = {phi.phi_x, phi.phi_z};
    double plus[2], minus[2];
    Orientation probes[4];
    for (int a = 0; a < 2; ++a) {
        plus[a] = std::min(at[a] + eps, hi[a]);
        minus[a] = std::max(at[a] - eps, lo[a]);
        Orientation p = phi, m = phi;
        (a == 0 ? p.phi_x : p.phi_z) = plus[a];
        (a == 0 ? m.phi_x : m.phi_z) = minus[a];
        probes[2 * a] = p;
        probes[2 * a + 1] = m;
    }
    double values[4];
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < 4; ++k) values[k] = f(probes[k]);
    } else {
        for (int k = 0; k < 4; ++k) values[k] = f(probes[k]);
    }
    Eigen::Vector2d g;
    for (int a = 0; a < 2; ++a) {
        const double h = plus[a] - minus[a];
        g(a) = h > 0.0 ? (values[2 * a] - values[2 * a + 1]) / h : 0.0;
    }
    return g;
}

/// Feasible interval of slot n (1-based): the angle limits intersected with the
/// per-slot reachability of both neighbouring orientations.
AngleBox slot_angle_box(const SolutionState& state, int n, const Scenario& s);

/// SEE with slot n's orientation replaced by o (all other variables unchanged).
double see_with_orientation(const SolutionState& state, int n, const Orientation& o, const SystemModel& model);

/// Gradient of the global SEE w.r.t. (phi_x[n], phi_z[n]).
Eigen::Vector2d fd_gradient(const SolutionState& state, int n, double eps_phi, const SystemModel& model,
                            Exec exec = Exec::Serial);

struct AngleResult {
    SolutionState state;
    int accepted_steps = 0;
    int seeded_slots = 0;
    int failed_line_searches = 0;
};

/// Seeding candidates of slot n: a seed_grid x seed_grid grid over its box and, if
/// enabled, the box-clamped boresight toward the nominal eve.
std::vector<Orientation> seed_candidates(const SolutionState& state, int n, const Scenario& s,
                                         const AngleConfig& cfg);

/// Sequential per-slot update in two phases: the best of the current orientation and
/// the seeding candidates (replaced only on strict improvement), then projected
/// gradient ascent on the global SEE.
AngleResult optimize_angles(const SolutionState& state, const SystemModel& model, const AngleConfig& cfg = {});

} // namespace uavjam
