// uavjam: run, validate and sweep secrecy-energy-efficiency experiments.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavjam/errors.hpp"
#include "uavjam/experiment.hpp"
#include "uavjam/scenario_io.hpp"

namespace {

struct CommonFlags {
    std::string scenario;
    std::vector<std::string> methods{"proposed", "fixed", "direct", "eve_oriented"};
    std::uint64_t seed = 0;
    std::string out = "out";
    std::string bound_mode = "nominal";
    int max_outer = 0;
    double eps_th = 0.0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--scenario", f.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--methods", f.methods, "proposed, fixed, direct, eve_oriented")->delimiter(',');
    cmd->add_option("--seed", f.seed, "Run seed");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--bound-mode", f.bound_mode, "Eve-rate bound: nominal, path-only, rigorous");
    cmd->add_option("--max-outer", f.max_outer, "Outer-iteration cap (overrides the scenario)");
    cmd->add_option("--eps-th", f.eps_th, "Convergence tolerance on SEE (overrides the scenario)");
}

uavjam::RunManifest manifest_from(const CommonFlags& f) {
    uavjam::RunManifest m;
    m.scenario_path = f.scenario;
    m.methods.clear();
    for (const auto& name : f.methods) m.methods.push_back(uavjam::parse_method(name));
    m.seed = f.seed;
    m.out_dir = f.out;
    m.bound_mode = uavjam::parse_bound_mode(f.bound_mode);
    if (f.max_outer > 0) m.max_outer = f.max_outer;
    if (f.eps_th > 0.0) m.eps_th = f.eps_th;
    return m;
}

void print_outcome(const uavjam::ExperimentOutcome& o) {
    for (const auto& m : o.methods) {
        if (!m.ok) {
            std::printf("%-13s FAILED  %s\n", uavjam::to_string(m.method), m.error.c_str());
            continue;
        }
        const auto& r = m.result.report;
        std::printf("%-13s SEE %.6g bit/Hz/J  secrecy %.6g  energy %.6g J  iterations %zu  %.1f s\n",
                    uavjam::to_string(m.method), r.see, r.sum_secrecy, r.total_energy,
                    m.result.trace.entries.size() - 1, m.runtime_seconds);
    }
    if (!o.message.empty()) std::fprintf(stderr, "error: %s\n", o.message.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy energy efficiency of a UAV jammer with a movable-antenna array"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "Optimize the selected methods and write CSV/JSON artifacts");
    add_common(run_cmd, run_flags);

    std::string validate_path;
    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a scenario file without optimizing");
    validate_cmd->add_option("scenario", validate_path, "Scenario JSON file")->required();

    CommonFlags sweep_flags;
    std::string sweep_key;
    std::vector<std::string> sweep_values;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Repeat `run` over values of one scenario key");
    add_common(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--key", sweep_key, "Scenario key to vary")->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : uavjam::kExitSchema;
    }

    try {
        if (*validate_cmd) {
            const uavjam::ValidationReport rep = uavjam::validate_file(validate_path);
            if (rep.ok()) {
                std::printf("valid\n");
                return uavjam::kExitOk;
            }
            for (const auto& f : rep.findings) std::printf("%s\n", f.c_str());
            return rep.readable ? uavjam::kExitSchema : uavjam::kExitIo;
        }
        if (*run_cmd) {
            const uavjam::ExperimentOutcome o = uavjam::run_experiment(manifest_from(run_flags));
            print_outcome(o);
            return o.exit_code;
        }
        if (*sweep_cmd) return uavjam::run_sweep(manifest_from(sweep_flags), sweep_key, sweep_values);
    } catch (const uavjam::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return uavjam::kExitSchema;
    }
    return uavjam::kExitOk;
}
