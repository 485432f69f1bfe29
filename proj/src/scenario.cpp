#include "uavjam/scenario.hpp"

#include <cmath>

#include "uavjam/errors.hpp"
#include "uavjam/geometry.hpp"

namespace uavjam {

double Scenario::beta0() const {
    const double r = kSpeedOfLight / (4.0 * std::numbers::pi * frequency);
    return r * r;
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

std::vector<std::string> feasibility_findings(const Scenario& s) {
    std::vector<std::string> out;
    auto need = [&](bool ok, const char* what) {
        if (!ok) out.emplace_back(what);
    };
    need(s.p_b > 0.0 && s.p_j > 0.0, "powers p_b, p_j must be positive");
    need(s.sigma2_u > 0.0 && s.sigma2_e > 0.0, "noise powers must be positive");
    need(s.frequency > 0.0, "frequency must be positive");
    need(s.epsilon >= 0.0, "epsilon must be non-negative");
    need(s.n_step >= 1, "n_step must be >= 1");
    need(s.t_flight > 0.0, "t_flight must be positive");
    need(s.v_max > 0.0, "v_max must be positive");
    need(s.n_b >= 1 && s.n_ma_x >= 1 && s.n_ma_y >= 1, "antenna counts must be positive");
    need(s.n_ma() <= 64, "n_ma must not exceed 64");
    need(s.h_j > 0.0, "h_j must be positive");
    need(std::abs(s.q_i.z() - s.h_j) < 1e-9 && std::abs(s.q_f.z() - s.h_j) < 1e-9,
         "q_i and q_f must be at altitude h_j");
    need(std::abs(s.q_b.z() - s.h_b) < 1e-9, "q_b must be at altitude h_b");
    need(s.q_u.z() == 0.0 && s.q_e.z() == 0.0, "ground nodes must be at z = 0");

    const auto& r = s.rotor;
    need(r.p0 > 0 && r.p1 > 0 && r.u_tip_sq > 0 && r.v0 > 0 && r.r_drag > 0 && r.rho > 0 && r.s > 0 && r.a > 0,
         "rotor parameters must be positive");
    const auto& m = s.ma;
    need(m.p_base > 0 && m.zeta > 0 && m.xi > 0 && m.omega_el_max > 0 && m.omega_az_max > 0,
         "MA parameters must be positive");

    if (s.n_step >= 1 && s.t_flight > 0.0 && s.v_max > 0.0) {
        const double reach = s.v_max * s.dt() * s.n_step;
        need(reach >= (s.q_f - s.q_i).norm() - 1e-9, "v_max too small to reach q_f within t_flight");
    }
    need((s.q_b - s.q_e).norm() > s.epsilon, "BS lies inside the eavesdropper uncertainty region");
    return out;
}

void validate_scenario(const Scenario& s) {
    const auto findings = feasibility_findings(s);
    if (!findings.empty()) throw InfeasibleScenarioError(findings.front());
}

} // namespace uavjam
