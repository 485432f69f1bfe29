#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "uavjam/numerics.hpp"

namespace uavjam {

/// Rotary-wing propulsion model coefficients.
struct RotorcraftPowerParams {
    double p0 = 125.4;       // blade profile power, W
    double p1 = 200.0;       // induced power, W
    double u_tip_sq = 8100.; // rotor tip speed squared, m^2/s^2
    double v0 = 2.5669;      // mean induced velocity in hover, m/s
    double r_drag = 0.6;     // fuselage drag ratio
    double rho = 1.225;      // air density, kg/m^3
    double s = 0.05;         // rotor solidity
    double a = 0.79;         // rotor disc area, m^2
};

/// Movable-antenna actuation model.
struct MAPowerParams {
    double p_base = 2.0;                              // W
    double zeta = 0.05;                               // W/rad, rotation about X'
    double xi = 0.03;                                 // W/rad, rotation about Z'
    double omega_el_max = std::numbers::pi / 4.0;     // rad/s
    double omega_az_max = std::numbers::pi / 4.0;     // rad/s
};

/// Immutable problem instance. Positions in meters, powers in W, frequency in Hz.
struct Scenario {
    Vec3 q_b{0.0, 0.0, 12.5};   // BS
    Vec3 q_u{100.0, 150.0, 0.0}; // legitimate user
    Vec3 q_e{150.0, 100.0, 0.0}; // nominal eavesdropper position
    Vec3 q_i{-100.0, 0.0, 50.0}; // flight start
    Vec3 q_f{300.0, 0.0, 50.0};  // flight end
    double h_b = 12.5;
    double h_j = 50.0;
    double p_b = 100.0;
    double p_j = 10.0;
    double sigma2_u = 3.981071705534969e-15;
    double sigma2_e = 3.981071705534969e-15;
    double alpha_bu = 3.5;
    double alpha_be = 3.5;
    double alpha_ju = 2.8;
    double alpha_je = 2.8;
    double frequency = 28e9;
    double epsilon = 50.0;
    double t_flight = 40.0;
    int n_step = 40;
    double v_max = 15.0;
    int n_b = 4;
    int n_ma_x = 4;
    int n_ma_y = 4;
    RotorcraftPowerParams rotor;
    MAPowerParams ma;

    double dt() const { return t_flight / n_step; }
    int n_ma() const { return n_ma_x * n_ma_y; }
    double step_radius() const { return v_max * dt(); }
    /// Path loss at 1 m, (c / 4 pi f)^2.
    double beta0() const;

    /// Simulation settings of the reference experiment.
    static Scenario table1() { return Scenario{}; }
};

/// Human-readable infeasibility findings; empty when the scenario is usable.
std::vector<std::string> feasibility_findings(const Scenario& s);

/// Throws InfeasibleScenarioError carrying the first finding.
void validate_scenario(const Scenario& s);

/// dBm to W.
double dbm_to_watt(double dbm);

} // namespace uavjam
