#include "uavjam/angle_opt.hpp"

#include <algorithm>
#include <cmath>

namespace uavjam {

namespace {

// Slot reports with slot n's orientation swapped; only slots n and n+1 change.
class SlotCache {
public:
    SlotCache(const SolutionState& state, const SystemModel& model)
        : state_(state), model_(model), reports_(evaluate_slots(state, model, Exec::Serial)) {}

    double see() const { return summarize(reports_, model_.scenario().dt()).see; }

    // const and allocation-local so probes may run concurrently
    double see_with(int n, const Orientation& o) const {
        const auto i = static_cast<std::size_t>(n - 1);
        std::vector<SlotReport> trial = reports_;
        trial[i] = report(n, o, prev_of(n));
        if (n < state_.n_step()) trial[i + 1] = report(n + 1, state_.orientations[i + 1], o);
        return summarize(std::move(trial), model_.scenario().dt()).see;
    }

    void commit(int n, const Orientation& o) {
        const auto i = static_cast<std::size_t>(n - 1);
        state_.orientations[i] = o;
        reports_[i] = evaluate_slot(state_, n, model_);
        if (n < state_.n_step()) reports_[i + 1] = evaluate_slot(state_, n + 1, model_);
    }

    const SolutionState& state() const { return state_; }

private:
    const Orientation& prev_of(int n) const {
        return n == 1 ? kMountOrientation : state_.orientations[static_cast<std::size_t>(n - 2)];
    }

    SlotReport report(int n, const Orientation& o, const Orientation& prev) const {
        const auto i = static_cast<std::size_t>(n);
        const ComplexVec& w = state_.beams[i - 1];
        const SlotRates r = model_.slot_rates(state_.trajectory[i], o, w);
        const SlotEnergy e = slot_energy(state_.trajectory[i - 1], state_.trajectory[i], prev, o, w.squaredNorm(),
                                         model_.scenario(), model_.options().ma_actuation);
        SlotReport out;
        out.r_sec = r.r_sec();
        out.r_bar = r.r_bar;
        out.r_u = r.r_u;
        out.r_e_bound = r.r_e;
        out.e_prop = e.e_prop;
        out.e_ma = e.e_ma;
        out.e_com = e.e_com;
        return out;
    }

    SolutionState state_;
    const SystemModel& model_;
    std::vector<SlotReport> reports_;
};

} // namespace

Orientation AngleBox::clamp(const Orientation& o) const {
    return {std::clamp(o.phi_x, lo_x, hi_x), std::clamp(o.phi_z, lo_z, hi_z)};
}

AngleBox slot_angle_box(const SolutionState& state, int n, const Scenario& s) {
    const double rx = max_rotation_x(s);
    const double rz = max_rotation_z(s);
    AngleBox box{-kAngleLimit, kAngleLimit, -kAngleLimit, kAngleLimit};
    auto tighten = [&](const Orientation& nb) {
        box.lo_x = std::max(box.lo_x, nb.phi_x - rx);
        box.hi_x = std::min(box.hi_x, nb.phi_x + rx);
        box.lo_z = std::max(box.lo_z, nb.phi_z - rz);
        box.hi_z = std::min(box.hi_z, nb.phi_z + rz);
    };
    const auto i = static_cast<std::size_t>(n - 1);
    tighten(n == 1 ? kMountOrientation : state.orientations[i - 1]);
    if (n < state.n_step()) tighten(state.orientations[i + 1]);
    // a feasible state always lies inside; guard against rounding at the edges
    const Orientation& cur = state.orientations[i];
    box.lo_x = std::min(box.lo_x, cur.phi_x);
    box.hi_x = std::max(box.hi_x, cur.phi_x);
    box.lo_z = std::min(box.lo_z, cur.phi_z);
    box.hi_z = std::max(box.hi_z, cur.phi_z);
    return box;
}

double see_with_orientation(const SolutionState& state, int n, const Orientation& o, const SystemModel& model) {
    SolutionState trial = state;
    trial.orientations[static_cast<std::size_t>(n - 1)] = o;
    return see_objective(trial, model, Exec::Serial).see;
}

Eigen::Vector2d fd_gradient(const SolutionState& state, int n, double eps_phi, const SystemModel& model,
                            Exec exec) {
    const AngleBox box = slot_angle_box(state, n, model.scenario());
    auto f = [&](const Orientation& o) { return see_with_orientation(state, n, o, model); };
    return fd_gradient(f, state.orientations[static_cast<std::size_t>(n - 1)], eps_phi, box, exec);
}

std::vector<Orientation> seed_candidates(const SolutionState& state, int n, const Scenario& s,
                                         const AngleConfig& cfg) {
    const AngleBox box = slot_angle_box(state, n, s);
    std::vector<Orientation> out;
    const int g = cfg.seed_grid;
    for (int a = 0; a < g; ++a) {
        for (int b = 0; b < g; ++b) {
            const double tx = g == 1 ? 0.5 : static_cast<double>(a) / (g - 1);
            const double tz = g == 1 ? 0.5 : static_cast<double>(b) / (g - 1);
            out.push_back({box.lo_x + tx * (box.hi_x - box.lo_x), box.lo_z + tz * (box.hi_z - box.lo_z)});
        }
    }
    if (cfg.seed_eve_boresight)
        out.push_back(box.clamp(
            boresight_angles_toward(state.trajectory[static_cast<std::size_t>(n)], s.q_e).orientation));
    return out;
}

AngleResult optimize_angles(const SolutionState& state, const SystemModel& model, const AngleConfig& cfg) {
    AngleResult out;
    SlotCache cache(state, model);
    const Scenario& s = model.scenario();
    for (int n = 1; n <= state.n_step(); ++n) {
        Orientation phi = cache.state().orientations[static_cast<std::size_t>(n - 1)];
        double f = cache.see();

        const std::vector<Orientation> seeds = seed_candidates(cache.state(), n, s, cfg);
        if (!seeds.empty()) {
            const auto count = static_cast<int>(seeds.size());
            std::vector<double> values(seeds.size());
            if (cfg.exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
                for (int k = 0; k < count; ++k)
                    values[static_cast<std::size_t>(k)] = cache.see_with(n, seeds[static_cast<std::size_t>(k)]);
            } else {
                for (int k = 0; k < count; ++k)
                    values[static_cast<std::size_t>(k)] = cache.see_with(n, seeds[static_cast<std::size_t>(k)]);
            }
            std::size_t best = 0;
            for (std::size_t k = 1; k < values.size(); ++k)
                if (values[k] > values[best]) best = k;
            if (values[best] > f) {
                cache.commit(n, seeds[best]);
                phi = seeds[best];
                f = values[best];
                ++out.seeded_slots;
            }
        }

        for (int it = 0; it < cfg.max_iter; ++it) {
            const AngleBox box = slot_angle_box(cache.state(), n, s);
            auto objective = [&](const Orientation& o) { return cache.see_with(n, o); };
            const Eigen::Vector2d g = fd_gradient(objective, phi, cfg.eps_phi, box, cfg.exec);
            const double gn2 = g.squaredNorm();
            if (!(gn2 > 0.0)) break;

            // alpha scaled so the first trial moves by init_step radians
            double alpha = cfg.init_step / std::sqrt(gn2);
            bool accepted = false;
            for (int bt = 0; bt <= cfg.max_backtracks; ++bt, alpha *= cfg.shrink) {
                const Orientation cand = box.clamp({phi.phi_x + alpha * g(0), phi.phi_z + alpha * g(1)});
                if (cand == phi) break;
                const double fc = objective(cand);
                if (fc >= f + cfg.armijo_kappa * alpha * gn2) {
                    cache.commit(n, cand);
                    phi = cand;
                    f = fc;
                    accepted = true;
                    ++out.accepted_steps;
                    break;
                }
            }
            if (!accepted) {
                if (it == 0) ++out.failed_line_searches;
                break;
            }
        }
    }
    out.state = cache.state();
    return out;
}

} // namespace uavjam
