#include "uavjam/radio_metrics.hpp"

#include <cassert>
#include <cmath>

#include "uavjam/errors.hpp"

namespace uavjam {

std::vector<std::string> feasibility_violations(const SolutionState& state, const Scenario& s, double tol) {
    std::vector<std::string> out;
    const int n_step = s.n_step;
    if (state.trajectory.size() != static_cast<std::size_t>(n_step + 1) || state.n_step() != n_step ||
        state.beams.size() != static_cast<std::size_t>(n_step)) {
        out.emplace_back("state dimensions do not match n_step");
        return out;
    }
    if ((state.trajectory.front() - s.q_i).norm() > tol) out.emplace_back("trajectory does not start at q_I");
    if ((state.trajectory.back() - s.q_f).norm() > tol) out.emplace_back("trajectory does not end at q_F");
    const double radius = s.step_radius();
    const double rot_x = max_rotation_x(s);
    const double rot_z = max_rotation_z(s);
    for (int n = 1; n <= n_step; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const std::string slot = " at slot " + std::to_string(n);
        if ((state.trajectory[i] - state.trajectory[i - 1]).norm() > radius + tol)
            out.push_back("speed limit exceeded" + slot);
        if (std::abs(state.trajectory[i].z() - s.h_j) > tol) out.push_back("altitude differs from h_j" + slot);
        const Orientation& o = state.orientations[i - 1];
        const Orientation& prev = n == 1 ? kMountOrientation : state.orientations[i - 2];
        if (!o.within_limits(tol)) out.push_back("angle outside [-pi/2, pi/2]" + slot);
        if (std::abs(o.phi_x - prev.phi_x) > rot_x + tol || std::abs(o.phi_z - prev.phi_z) > rot_z + tol)
            out.push_back("rotation not reachable within the slot" + slot);
        if (state.beams[i - 1].size() != s.n_ma()) out.push_back("beam dimension mismatch" + slot);
        else if (state.beams[i - 1].norm() > 1.0 + tol) out.push_back("beam norm exceeds 1" + slot);
    }
    return out;
}

std::vector<Vec3> straight_line(const Scenario& s) {
    std::vector<Vec3> q(static_cast<std::size_t>(s.n_step + 1));
    for (int n = 0; n <= s.n_step; ++n) {
        const double t = static_cast<double>(n) / s.n_step;
        q[static_cast<std::size_t>(n)] = (1.0 - t) * s.q_i + t * s.q_f;
    }
    q.front() = s.q_i;
    q.back() = s.q_f;
    return q;
}

SystemModel::SystemModel(Scenario s, ModelOptions opt)
    : s_(std::move(s)), opt_(opt), ma_(ma_array(s_)), bs_(bs_array(s_)) {
    validate_scenario(s_);
    h_bu_ = channel(s_.q_b, s_.q_u, Orientation{}, bs_, s_.alpha_bu, s_.frequency);
    w_b_ = mrt_beam(h_bu_.h);
    user_signal_ = s_.p_b * std::norm(h_bu_.h.dot(w_b_));

    const EveGainBounds b = worst_case_eve_gains(s_.q_i, s_);
    double bs_factor = 1.0;
    switch (opt_.bound_mode) {
    case EveBoundMode::Nominal: {
        const ComplexVec g = steering_vector(bs_, local_direction(s_.q_b, s_.q_e, Orientation{}), s_.frequency);
        bs_factor = std::norm(g.dot(w_b_));
        break;
    }
    case EveBoundMode::PathOnly: bs_factor = 1.0; break;
    case EveBoundMode::Rigorous: bs_factor = s_.n_b * w_b_.squaredNorm(); break;
    }
    eve_signal_ = s_.p_b * b.h_be * bs_factor;
    if (opt_.bound_mode == EveBoundMode::Rigorous) grid_ = uncertainty_grid(s_.q_e, s_.epsilon, opt_.rigorous_grid);
}

SlotChannels SystemModel::slot_channels(const Vec3& q_j, const Orientation& o) const {
    SlotChannels c;
    c.bu = h_bu_;
    c.ju = channel(q_j, s_.q_u, o, ma_, s_.alpha_ju, s_.frequency);
    c.je = channel(q_j, s_.q_e, o, ma_, s_.alpha_je, s_.frequency);
    return c;
}

double SystemModel::eve_jamming_gain(const Vec3& q_j, const Orientation& o, const ComplexVec& w_j) const {
    const double h_je = worst_case_eve_gains(q_j, s_).h_je;
    switch (opt_.bound_mode) {
    case EveBoundMode::Nominal: {
        const ComplexVec g = steering_vector(ma_, local_direction(q_j, s_.q_e, o), s_.frequency);
        return h_je * std::norm(g.dot(w_j));
    }
    case EveBoundMode::PathOnly: return h_je;
    case EveBoundMode::Rigorous: return h_je * min_jamming_array_gain(q_j, o, w_j, grid_, s_);
    }
    return h_je;
}

SlotRates SystemModel::slot_rates(const Vec3& q_j, const Orientation& o, const ComplexVec& w_j) const {
    const ChannelVec ju = channel(q_j, s_.q_u, o, ma_, s_.alpha_ju, s_.frequency);
    SlotRates r;
    r.gamma_u = user_signal_ / (s_.p_j * std::norm(ju.h.dot(w_j)) + s_.sigma2_u);
    r.r_u = std::log2(1.0 + r.gamma_u);
    r.r_e = std::log2(1.0 + eve_signal_ / (s_.p_j * eve_jamming_gain(q_j, o, w_j) + s_.sigma2_e));
    r.r_bar = r.r_u - r.r_e;
    return r;
}

double sinr(Node node, const ChannelVec& h_b, const ChannelVec& h_j, const ComplexVec& w_b, const ComplexVec& w_j,
            const Scenario& s) {
    const double noise = node == Node::User ? s.sigma2_u : s.sigma2_e;
    return s.p_b * std::norm(h_b.h.dot(w_b)) / (s.p_j * std::norm(h_j.h.dot(w_j)) + noise);
}

ComplexVec mrt_beam(const ComplexVec& h) {
    const double n = h.norm();
    if (!(n > 0.0)) throw GeometryError("mrt_beam: zero channel");
    return h / n;
}

double secrecy_rate_unclipped(const SolutionState& state, int n, const SystemModel& model) {
    const auto i = static_cast<std::size_t>(n);
    return model.slot_rates(state.trajectory[i], state.orientations[i - 1], state.beams[i - 1]).r_bar;
}

double secrecy_rate_slot(const SolutionState& state, int n, const SystemModel& model) {
    const double r = secrecy_rate_unclipped(state, n, model);
    return r > 0.0 ? r : 0.0;
}

SlotReport evaluate_slot(const SolutionState& state, int n, const SystemModel& model) {
    const auto i = static_cast<std::size_t>(n);
    const Orientation& o = state.orientations[i - 1];
    const Orientation& prev = n == 1 ? kMountOrientation : state.orientations[i - 2];
    const ComplexVec& w = state.beams[i - 1];
    const SlotRates r = model.slot_rates(state.trajectory[i], o, w);
    const SlotEnergy e = slot_energy(state.trajectory[i - 1], state.trajectory[i], prev, o, w.squaredNorm(),
                                     model.scenario(), model.options().ma_actuation);
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

std::vector<SlotReport> evaluate_slots(const SolutionState& state, const SystemModel& model, Exec exec) {
    const int n_step = state.n_step();
    std::vector<SlotReport> slots(static_cast<std::size_t>(n_step));
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int n = 1; n <= n_step; ++n) slots[static_cast<std::size_t>(n - 1)] = evaluate_slot(state, n, model);
    } else {
        for (int n = 1; n <= n_step; ++n) slots[static_cast<std::size_t>(n - 1)] = evaluate_slot(state, n, model);
    }
    return slots;
}

SEEReport summarize(std::vector<SlotReport> slots, double dt) {
    SEEReport rep;
    for (const SlotReport& r : slots) {
        rep.sum_secrecy += r.r_sec;
        rep.e_prop += r.e_prop;
        rep.e_ma += r.e_ma;
        rep.e_com += r.e_com;
    }
    rep.total_energy = rep.e_prop + rep.e_ma + rep.e_com;
    assert(rep.total_energy > 0.0);
    rep.see = rep.sum_secrecy * dt / rep.total_energy;
    rep.per_slot = std::move(slots);
    return rep;
}

SEEReport see_objective(const SolutionState& state, const SystemModel& model, Exec exec) {
    return summarize(evaluate_slots(state, model, exec), model.scenario().dt());
}

} // namespace uavjam
