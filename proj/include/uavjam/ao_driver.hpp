#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "uavjam/angle_opt.hpp"
#include "uavjam/beam_opt.hpp"
#include "uavjam/traj_opt.hpp"

namespace uavjam {

/// How the orientation block treats the MA angles.
enum class AnglePolicy {
    Optimize,    // projected gradient ascent on SEE
    Frozen,      // keep the initial orientations
    EveOriented, // boresight toward the nominal eve, limited by per-slot reachability
};

struct AOConfig {
    double eps_th = 1e-4; // stop when |eta_k - eta_{k-1}| < eps_th
    int max_outer = 50;
    ModelOptions model;
    TrajConfig traj;
    AngleConfig angle;
    BeamConfig beam;
    std::uint64_t seed = 0;
    bool optimize_trajectory = true;
    bool optimize_beams = true;
    AnglePolicy angles = AnglePolicy::Optimize;
};

/// Throws ValidationError for eps_th <= 0 or max_outer < 1.
void validate_config(const AOConfig& cfg);

struct TraceEntry {
    int k = 0;                 // 0 = initial state
    double see = 0.0;
    double sum_secrecy = 0.0;
    double total_energy = 0.0;
    double delta_traj = 0.0;   // SEE change contributed by each block
    double delta_angle = 0.0;
    double delta_beam = 0.0;
    double wall_seconds = 0.0; // since the start of the run
    std::vector<std::string> skipped; // blocks that threw, with the reason
};

/// Lambda sequence and final residual of one fractional-solver invocation.
struct DinkelbachLog {
    std::string solver; // "trajectory" or "beam"
    int outer = 0;
    std::vector<double> lambdas;
    double residual = 0.0;
    bool converged = false;
};

struct ConvergenceTrace {
    std::vector<TraceEntry> entries;
    std::vector<DinkelbachLog> dinkelbach;
    bool converged = false;
};

struct AOResult {
    SolutionState state;
    SEEReport report;
    ConvergenceTrace trace;
};

/// Straight line with the given angles and unit-norm beams matched to the nominal
/// eve direction in each slot's frame.
SolutionState initial_state(const SystemModel& model, const std::vector<Orientation>& angles);
/// Zero angles.
SolutionState initial_state(const SystemModel& model);

/// Per-slot boresight toward the nominal eve, each slot limited to what the actuator
/// reaches from the previous orientation.
std::vector<Orientation> eve_oriented_angles(const std::vector<Vec3>& trajectory, const Scenario& s);

/// Alternates trajectory, angle and beam blocks until the SEE settles. Starts from the
/// straight line with beams matched to the nominal eve and zero angles (eve-tracking
/// angles under AnglePolicy::EveOriented).
AOResult run(const Scenario& s, const AOConfig& cfg);
AOResult run(const SystemModel& model, const SolutionState& init, const AOConfig& cfg);

struct BatchJob {
    Scenario scenario;
    AOConfig config;
};

/// Independent runs; job i's result is at index i regardless of scheduling.
std::vector<AOResult> run_batch(const std::vector<BatchJob>& jobs);

} // namespace uavjam
