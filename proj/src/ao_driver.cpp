#include "uavjam/ao_driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>

#include "uavjam/errors.hpp"

namespace uavjam {

namespace {

template <class Point>
void log_runs(std::vector<DinkelbachLog>& out, const char* solver, int outer,
              const std::vector<DinkelbachResult<Point>>& runs) {
    for (const auto& r : runs) out.push_back({solver, outer, r.lambdas, r.residual, r.converged});
}

} // namespace

void validate_config(const AOConfig& cfg) {
    if (!(cfg.eps_th > 0.0)) throw ValidationError("eps_th must be positive");
    if (cfg.max_outer < 1) throw ValidationError("max_outer must be at least 1");
}

SolutionState initial_state(const SystemModel& model, const std::vector<Orientation>& angles) {
    const Scenario& s = model.scenario();
    SolutionState st;
    st.trajectory = straight_line(s);
    st.orientations = angles;
    st.beams.reserve(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i)
        st.beams.push_back(mrt_beam(model.slot_channels(st.trajectory[i + 1], angles[i]).je.h));
    return st;
}

SolutionState initial_state(const SystemModel& model) {
    return initial_state(model, std::vector<Orientation>(static_cast<std::size_t>(model.scenario().n_step)));
}

std::vector<Orientation> eve_oriented_angles(const std::vector<Vec3>& trajectory, const Scenario& s) {
    const double rx = max_rotation_x(s);
    const double rz = max_rotation_z(s);
    std::vector<Orientation> out;
    Orientation prev = kMountOrientation;
    for (std::size_t i = 1; i < trajectory.size(); ++i) {
        const Orientation target = boresight_angles_toward(trajectory[i], s.q_e).orientation;
        const Orientation o{std::clamp(target.phi_x, prev.phi_x - rx, prev.phi_x + rx),
                            std::clamp(target.phi_z, prev.phi_z - rz, prev.phi_z + rz)};
        out.push_back(o);
        prev = o;
    }
    return out;
}

AOResult run(const Scenario& s, const AOConfig& cfg) {
    const SystemModel model(s, cfg.model);
    SolutionState init = initial_state(model);
    if (cfg.angles == AnglePolicy::EveOriented)
        init = initial_state(model, eve_oriented_angles(init.trajectory, s));
    return run(model, init, cfg);
}

AOResult run(const SystemModel& model, const SolutionState& init, const AOConfig& cfg) {
    validate_config(cfg);
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    AOResult res;
    res.state = init;
    {
        const auto bad = feasibility_violations(res.state, model.scenario());
        if (!bad.empty()) throw ValidationError("initial state infeasible: " + bad.front());
    }
    SEEReport rep = see_objective(res.state, model);
    res.trace.entries.push_back({0, rep.see, rep.sum_secrecy, rep.total_energy, 0.0, 0.0, 0.0, elapsed(), {}});

    for (int k = 1; k <= cfg.max_outer; ++k) {
        TraceEntry entry;
        entry.k = k;
        double eta = rep.see;
        const double eta_start = eta;

        // Each block's proposal is kept only if the SEE does not drop.
        auto attempt = [&](const char* name, double& delta, auto&& block) {
            try {
                SolutionState next = block();
                const SEEReport r = see_objective(next, model);
                if (r.see >= eta) {
                    delta = r.see - eta;
                    eta = r.see;
                    rep = r;
                    res.state = std::move(next);
                }
            } catch (const std::exception& e) {
                entry.skipped.push_back(std::string(name) + ": " + e.what());
            }
        };

        if (cfg.optimize_trajectory) {
            attempt("trajectory", entry.delta_traj, [&] {
                TrajResult tr = optimize_trajectory(res.state, model, cfg.traj);
                log_runs(res.trace.dinkelbach, "trajectory", k, tr.dinkelbach_runs);
                // eve-tracking angles follow the waypoints, so they move with the trajectory
                if (cfg.angles == AnglePolicy::EveOriented)
                    tr.state.orientations = eve_oriented_angles(tr.state.trajectory, model.scenario());
                return std::move(tr.state);
            });
        }
        switch (cfg.angles) {
        case AnglePolicy::Optimize:
            attempt("angles", entry.delta_angle,
                    [&] { return optimize_angles(res.state, model, cfg.angle).state; });
            break;
        case AnglePolicy::EveOriented:
            attempt("angles", entry.delta_angle, [&] {
                SolutionState next = res.state;
                next.orientations = eve_oriented_angles(next.trajectory, model.scenario());
                return next;
            });
            break;
        case AnglePolicy::Frozen: break;
        }
        if (cfg.optimize_beams) {
            attempt("beams", entry.delta_beam, [&] {
                BeamResult br = optimize_beams(res.state, model, cfg.beam, cfg.seed, static_cast<std::uint64_t>(k));
                log_runs(res.trace.dinkelbach, "beam", k, br.dinkelbach_runs);
                return std::move(br.state);
            });
        }

        entry.see = rep.see;
        entry.sum_secrecy = rep.sum_secrecy;
        entry.total_energy = rep.total_energy;
        entry.wall_seconds = elapsed();
        res.trace.entries.push_back(std::move(entry));
        if (std::abs(rep.see - eta_start) < cfg.eps_th) {
            res.trace.converged = true;
            break;
        }
    }
    res.report = std::move(rep);
    return res;
}

std::vector<AOResult> run_batch(const std::vector<BatchJob>& jobs) {
    const auto count = static_cast<int>(jobs.size());
    std::vector<AOResult> out(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int j = 0; j < count; ++j) {
        const auto i = static_cast<std::size_t>(j);
        try {
            out[i] = run(jobs[i].scenario, jobs[i].config);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace uavjam
