#pragma once

#include <vector>

#include "uavjam/geometry.hpp"
#include "uavjam/scenario.hpp"

namespace uavjam {

struct SolutionState;

/// Rotary-wing propulsion power at forward speed v (blade + induced + parasite).
/// Throws ValidationError for negative or non-finite v.
double propulsion_power(double v, const RotorcraftPowerParams& p);

struct PropulsionTerms {
    double blade = 0.0;
    double induced = 0.0;
    double parasite = 0.0;
    double total() const { return blade + induced + parasite; }
};
PropulsionTerms propulsion_terms(double v, const RotorcraftPowerParams& p);

struct MAActuation {
    double power = 0.0; // W
    double time = 0.0;  // s
    double energy() const { return power * time; }
};

/// P_MA = P_base + zeta |d phi_x| + xi |d phi_z|; t_MA = max(|d phi_x| / w_el, |d phi_z| / w_az),
/// capped at slot_duration.
MAActuation ma_power_and_time(const Orientation& prev, const Orientation& next, const MAPowerParams& p,
                              double slot_duration);

/// Largest per-slot rotation the actuator completes within one slot.
double max_rotation_x(const Scenario& s);
double max_rotation_z(const Scenario& s);

struct SlotEnergy {
    double e_prop = 0.0;
    double e_ma = 0.0;
    double e_com = 0.0;
    double total() const { return e_prop + e_ma + e_com; }
};

struct EnergyBreakdown {
    std::vector<SlotEnergy> slots; // slots[n-1] holds slot n
    double e_prop = 0.0;
    double e_ma = 0.0;
    double e_com = 0.0;
    double total() const { return e_prop + e_ma + e_com; }
};

/// Energy of slot n (1-based) given the waypoints bracketing it, the orientation
/// before and after, and the jamming beam norm.
SlotEnergy slot_energy(const Vec3& q_prev, const Vec3& q_next, const Orientation& o_prev, const Orientation& o_next,
                       double beam_norm_sq, const Scenario& s, bool ma_actuation);

/// Orientation in force before slot 1.
inline constexpr Orientation kMountOrientation{};

EnergyBreakdown total_energy(const SolutionState& state, const Scenario& s, bool ma_actuation = true);

} // namespace uavjam
