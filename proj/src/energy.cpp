#include "uavjam/energy.hpp"

#include <algorithm>
#include <cmath>

#include "uavjam/errors.hpp"
#include "uavjam/radio_metrics.hpp"

namespace uavjam {

PropulsionTerms propulsion_terms(double v, const RotorcraftPowerParams& p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("propulsion_power: speed must be finite and >= 0");
    const double v2 = v * v;
    const double v0_2 = p.v0 * p.v0;
    PropulsionTerms t;
    t.blade = p.p0 * (1.0 + 3.0 * v2 / p.u_tip_sq);
    // sqrt(1 + x^2) - x with x = v^2 / (2 v0^2), written to avoid cancellation at high speed
    const double x = v2 / (2.0 * v0_2);
    const double inner = 1.0 / (std::sqrt(1.0 + x * x) + x);
    t.induced = p.p1 * std::sqrt(inner);
    t.parasite = 0.5 * p.r_drag * p.rho * p.s * p.a * v2 * v;
    return t;
}

double propulsion_power(double v, const RotorcraftPowerParams& p) { return propulsion_terms(v, p).total(); }

MAActuation ma_power_and_time(const Orientation& prev, const Orientation& next, const MAPowerParams& p,
                              double slot_duration) {
    const double dx = std::abs(next.phi_x - prev.phi_x);
    const double dz = std::abs(next.phi_z - prev.phi_z);
    MAActuation out;
    out.power = p.p_base + p.zeta * dx + p.xi * dz;
    out.time = std::min(std::max(dx / p.omega_el_max, dz / p.omega_az_max), slot_duration);
    return out;
}

double max_rotation_x(const Scenario& s) { return s.ma.omega_el_max * s.dt(); }
double max_rotation_z(const Scenario& s) { return s.ma.omega_az_max * s.dt(); }

SlotEnergy slot_energy(const Vec3& q_prev, const Vec3& q_next, const Orientation& o_prev, const Orientation& o_next,
                       double beam_norm_sq, const Scenario& s, bool ma_actuation) {
    const double dt = s.dt();
    SlotEnergy e;
    e.e_prop = propulsion_power((q_next - q_prev).norm() / dt, s.rotor) * dt;
    e.e_ma = ma_actuation ? ma_power_and_time(o_prev, o_next, s.ma, dt).energy() : 0.0;
    e.e_com = s.p_j * beam_norm_sq * dt;
    return e;
}

EnergyBreakdown total_energy(const SolutionState& state, const Scenario& s, bool ma_actuation) {
    EnergyBreakdown out;
    const int n_step = static_cast<int>(state.orientations.size());
    out.slots.reserve(static_cast<std::size_t>(n_step));
    for (int n = 1; n <= n_step; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const Orientation& prev = n == 1 ? kMountOrientation : state.orientations[i - 2];
        const SlotEnergy e = slot_energy(state.trajectory[i - 1], state.trajectory[i], prev, state.orientations[i - 1],
                                         state.beams[i - 1].squaredNorm(), s, ma_actuation);
        out.slots.push_back(e);
        out.e_prop += e.e_prop;
        out.e_ma += e.e_ma;
        out.e_com += e.e_com;
    }
    return out;
}

} // namespace uavjam
