#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uavjam/baselines.hpp"

namespace uavjam {

struct RunManifest {
    std::string scenario_path;
    std::vector<Method> methods{Method::Proposed, Method::Fixed, Method::Direct, Method::EveOriented};
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    EveBoundMode bound_mode = EveBoundMode::Nominal;
    std::map<std::string, std::string> overrides; // scenario key -> JSON text
    std::optional<int> max_outer;                 // overrides the scenario's solver settings
    std::optional<double> eps_th;
};

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitSchema = 1, kExitSolver = 2, kExitIo = 3 };

struct MethodOutcome {
    Method method = Method::Proposed;
    bool ok = false;
    std::string error;
    AOResult result;
    double runtime_seconds = 0.0;
};

struct ExperimentOutcome {
    int exit_code = kExitOk;
    std::string message;
    std::vector<MethodOutcome> methods;
};

/// Sum of waypoint-to-waypoint distances.
double path_length(const std::vector<Vec3>& trajectory);

/// (see - reference) / reference.
double relative_improvement(double see, double reference);

/// %.12g formatting used for every float in the CSV outputs.
std::string format_double(double v);

// CSV bodies; each starts with its header line.
std::string trajectory_csv(const SolutionState& state, const Scenario& s);  // n,x,y,z,v,phi_x,phi_z
std::string convergence_csv(const ConvergenceTrace& trace);                 // k,see,sum_secrecy,total_energy
std::string energy_csv(const SEEReport& report);                            // n,E_prop,E_MA,E_com

/// Scenario and solver config a manifest describes. Throws SchemaError / std::ios_base::failure.
std::pair<Scenario, AOConfig> resolve_manifest(const RunManifest& manifest);

/// Runs every method and writes <out_dir>/<method>/{trajectory,convergence,energy}.csv and
/// summary.json. Never throws; failures map to the exit codes above.
ExperimentOutcome run_experiment(const RunManifest& manifest);

/// One run per value of `key`, written under <out_dir>/<key>=<value>/. Runs execute
/// concurrently. The exit code is the largest of the individual runs.
int run_sweep(const RunManifest& manifest, const std::string& key, const std::vector<std::string>& values);

} // namespace uavjam
