#pragma once

#include <vector>

#include "uavjam/dinkelbach.hpp"
#include "uavjam/radio_metrics.hpp"

namespace uavjam {

using Trajectory = std::vector<Vec3>;

struct TrajConfig {
    int sca_iters = 10;
    DinkelbachOptions dinkelbach{1e-6, 30};
    int max_iter = 1000;       // projected-gradient iterations per parametric solve
    double armijo_kappa = 0.1;
    double armijo_shrink = 0.5;
    double init_step = 1.0;
    int max_backtracks = 60;
    int projection_sweeps = 50;
    double projection_tol = 1e-9;
    // Largest horizontal waypoint move per SCA iteration, m. Array factors are frozen
    // at the reference, so the model is trusted only near it.
    double trust_radius = 1.0;
};

/// Auxiliary variables of the reformulated subproblem at a given trajectory.
struct TrajAux {
    std::vector<double> mu;  // alpha_Ju * log-distance surrogate to the user
    std::vector<double> nu;  // alpha_Be * log of the worst-case BS->eve distance (constant)
    std::vector<double> tau; // alpha_Je * log-distance surrogate to the disc edge
    std::vector<double> chi; // induced-power time surrogate
};

/// Concave-over-convex model of the trajectory subproblem, linearized at q_ref with
/// beams and orientations frozen. Path gains use the exponential substitution
/// beta0 * e^{-mu}; array factors are frozen at q_ref.
class TrajSurrogate {
public:
    TrajSurrogate(const Trajectory& q_ref, const SolutionState& frozen, const SystemModel& model);

    const Trajectory& reference() const noexcept { return q_ref_; }

    /// Lower bound of model_numerator, tangent at q_ref. Units: bit/Hz (rates times dt).
    double numerator(const Trajectory& q) const;
    /// Upper bound of model_denominator, tangent at q_ref. Units: J.
    double denominator(const Trajectory& q) const;

    /// Reformulated secrecy sum with array factors frozen at q_ref, before linearization.
    double model_numerator(const Trajectory& q) const;
    /// Exact energy with MA and communication energy frozen.
    double model_denominator(const Trajectory& q) const;

    /// Gradient of numerator - lambda * denominator w.r.t. the free waypoints (x, y only).
    std::vector<Eigen::Vector2d> parametric_gradient(const Trajectory& q, double lambda) const;

    TrajAux aux(const Trajectory& q) const;

    /// Projected gradient ascent on numerator - lambda * denominator; never returns a
    /// point worse than q_start.
    Trajectory maximize_parametric(double lambda, const Trajectory& q_start) const;

    void set_config(const TrajConfig& c) { cfg_ = c; }

private:
    struct Slot {
        // user side: I_u = cu * e^{-mu}
        double cu = 0.0, mu_ref = 0.0, t1_ref = 0.0, t1_slope = 0.0, mu_peak = 0.0;
        // eve side: J_e = ce * e^{-tau}
        double ce = 0.0, tau_ref = 0.0, t3_ref = 0.0, t3_slope = 0.0, tau_peak = 0.0, d_ref = 0.0;
        // propulsion
        double chi_ref = 0.0;
        Eigen::Vector2d delta_ref = Eigen::Vector2d::Zero();
    };

    double mu_bound(std::size_t n, const Vec3& q, Eigen::Vector2d* grad) const;
    double tau_bound(std::size_t n, const Vec3& q, Eigen::Vector2d* grad) const;
    double chi_star(std::size_t n, double ell, double* dchi_dell) const;
    double user_term(std::size_t n, double mu, double* slope) const;
    double eve_term(std::size_t n, double tau, double* slope) const;

    Trajectory q_ref_;
    std::vector<Slot> slots_;
    Scenario s_;
    double user_signal_ = 0.0;
    double eve_signal_ = 0.0;
    double frozen_energy_ = 0.0;
    TrajConfig cfg_;
};

TrajSurrogate build_surrogate(const Trajectory& q_ref, const SolutionState& frozen, const SystemModel& model);

/// Endpoint-pinned cyclic projection onto the per-slot displacement balls.
/// Returns false when the sweeps end infeasible.
bool project_trajectory(Trajectory& q, const Scenario& s, int sweeps, double tol);

DinkelbachResult<Trajectory> dinkelbach_solve(const TrajSurrogate& surrogate, const Trajectory& q_init,
                                              const DinkelbachOptions& opt);

Trajectory inner_parametric_solve(const TrajSurrogate& surrogate, double lambda, const Trajectory& q_start);

struct TrajResult {
    SolutionState state;
    int sca_iterations = 0;
    bool fallback = false;
    std::vector<DinkelbachResult<Trajectory>> dinkelbach_runs;
};

/// SCA outer loop; accepts a new trajectory only when the true SEE does not decrease.
TrajResult optimize_trajectory(const SolutionState& state, const SystemModel& model, const TrajConfig& cfg = {});

} // namespace uavjam
