#pragma once

#include <vector>

#include "uavjam/dinkelbach.hpp"
#include "uavjam/radio_metrics.hpp"

namespace uavjam {

/// Slot-n beam subproblem with every other variable frozen.
///
/// Eve jamming gain of a beam w is jam_floor + h_je * min_k |g_k^H w|^2 over the
/// columns g_k of eve_dirs (no term when eve_dirs is empty). One column toward the
/// nominal eve reproduces the `nominal` bound, the disc grid the `rigorous` one, and
/// no column with jam_floor = h_je the `path-only` one.
struct BeamSubproblem {
    int n = 0;
    double s_u = 0.0;       // P_B |h_Bu^H w_B|^2
    double s_e = 0.0;       // eve signal bound
    ComplexVec h_u;         // UAV -> user channel
    CMatrix eve_dirs;       // columns: candidate eve steering vectors
    double h_je = 0.0;      // UAV -> eve path gain bound
    double jam_floor = 0.0; // W-independent eve jamming gain
    double p_j = 0.0;
    double sigma2_u = 0.0;
    double sigma2_e = 0.0;
    double dt = 0.0;
    double omega1 = 0.0;    // dt * clipped secrecy rates of the other slots
    double omega2 = 0.0;    // all energy except this slot's communication energy, > 0

    Eigen::Index dim() const { return h_u.size(); }
    HermitianMatrix user_matrix() const;
    /// h_je g_k g_k^H for the column with the smallest g_k^H W g_k.
    HermitianMatrix active_eve_matrix(const HermitianMatrix& w) const;
    /// Eve jamming gain of a beam (min over eve_dirs).
    double eve_jamming_gain(const ComplexVec& w) const;
};

/// Builds slot n's subproblem from the current state and per-slot reports.
BeamSubproblem make_beam_subproblem(const SolutionState& state, int n, const SystemModel& model,
                                    const std::vector<SlotReport>& reports);

/// r_u - r_e in lifted form, with the eve gain evaluated through `h_e`.
double secrecy_rate_matrix(const HermitianMatrix& w, const HermitianMatrix& h_e, const BeamSubproblem& sub);

/// Concave lower bound of secrecy_rate_matrix(., h_e): the two convex log terms are
/// replaced by their tangents at w_ref.
double secrecy_lower_bound(const HermitianMatrix& w, const HermitianMatrix& w_ref, const HermitianMatrix& h_e,
                           const BeamSubproblem& sub);
/// Same with h_e = active_eve_matrix(w_ref).
double secrecy_lower_bound(const HermitianMatrix& w, const HermitianMatrix& w_ref, const BeamSubproblem& sub);

/// Unclipped secrecy rate of a beam.
double slot_secrecy_rate(const ComplexVec& w, const BeamSubproblem& sub);

/// Global SEE as a function of this slot's beam:
/// (omega1 + dt * max(0, rate)) / (omega2 + P_J |w|^2 dt).
double slot_objective(const ComplexVec& w, const BeamSubproblem& sub);

struct BeamConfig {
    int sca_iters = 20;
    double sca_tol = 1e-7;                 // relative gain that ends the SCA loop
    DinkelbachOptions dinkelbach{1e-6, 30};
    int max_iter = 100;                    // projected-gradient iterations per parametric solve
    double armijo_kappa = 0.1;
    double armijo_shrink = 0.5;
    int max_backtracks = 40;
    int randomization_samples = 100;
    Exec exec = Exec::Parallel;            // candidate scoring
};

struct SlotSdrResult {
    HermitianMatrix w;
    std::vector<DinkelbachResult<HermitianMatrix>> dinkelbach_runs;
};

/// SCA around Dinkelbach on the lifted slot problem. The lifted fractional objective
/// never falls below its value at w_init.
SlotSdrResult solve_slot_sdr(const BeamSubproblem& sub, const HermitianMatrix& w_init, const BeamConfig& cfg = {});

/// Scores beams by slot_objective.
std::vector<double> score_candidates(const std::vector<ComplexVec>& candidates, const BeamSubproblem& sub,
                                     Exec exec = Exec::Parallel);

/// Rank-one recovery. Candidates: the incumbent, the unit dominant eigenvector,
/// sqrt(lambda_1) times it, and k draws V Lambda^{1/2} z rescaled into the unit ball.
/// The incumbent is replaced only by a strictly better candidate.
ComplexVec gaussian_randomization(const HermitianMatrix& w_star, const BeamSubproblem& sub, int k, RngStream& rng,
                                  const ComplexVec& incumbent, Exec exec = Exec::Parallel);

struct BeamResult {
    SolutionState state;
    std::vector<DinkelbachResult<HermitianMatrix>> dinkelbach_runs;
    int improved_slots = 0;
};

/// Sequential per-slot update; each slot's randomization stream is derived from
/// (seed, round, slot).
BeamResult optimize_beams(const SolutionState& state, const SystemModel& model, const BeamConfig& cfg,
                          std::uint64_t seed, std::uint64_t round);

} // namespace uavjam
