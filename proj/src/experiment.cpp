#include "uavjam/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "uavjam/errors.hpp"
#include "uavjam/scenario_io.hpp"

namespace uavjam {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot write '" + path.string() + "'");
    out << body;
    if (!out) throw std::ios_base::failure("write failed for '" + path.string() + "'");
}

json dinkelbach_summary(const ConvergenceTrace& trace) {
    double max_residual = 0.0;
    bool monotone = true;
    for (const auto& log : trace.dinkelbach) {
        max_residual = std::max(max_residual, log.residual);
        for (std::size_t i = 1; i < log.lambdas.size(); ++i)
            if (log.lambdas[i] < log.lambdas[i - 1]) monotone = false;
    }
    return {{"invocations", trace.dinkelbach.size()},
            {"max_final_residual", max_residual},
            {"lambdas_nondecreasing", monotone}};
}

json summary_json(const MethodOutcome& m, const RunManifest& manifest, const std::optional<double>& see_fixed,
                  const std::optional<double>& see_eve) {
    json j;
    j["method"] = to_string(m.method);
    j["seed"] = manifest.seed;
    j["bound_mode"] = to_string(manifest.bound_mode);
    j["runtime_seconds"] = m.runtime_seconds;
    j["partial"] = !m.ok;
    if (!m.ok) {
        j["error"] = m.error;
        return j;
    }
    const SEEReport& r = m.result.report;
    j["see"] = r.see;
    j["sum_secrecy"] = r.sum_secrecy;
    j["total_energy"] = r.total_energy;
    j["e_prop"] = r.e_prop;
    j["e_ma"] = r.e_ma;
    j["e_com"] = r.e_com;
    j["path_length"] = path_length(m.result.state.trajectory);
    j["outer_iterations"] = static_cast<int>(m.result.trace.entries.size()) - 1;
    j["converged"] = m.result.trace.converged;
    j["improvement_vs_fixed"] = see_fixed ? json(relative_improvement(r.see, *see_fixed)) : json(nullptr);
    j["improvement_vs_eve_oriented"] = see_eve ? json(relative_improvement(r.see, *see_eve)) : json(nullptr);
    json skipped = json::array();
    for (const auto& e : m.result.trace.entries)
        for (const auto& s : e.skipped) skipped.push_back({{"k", e.k}, {"block", s}});
    j["skipped_blocks"] = skipped;
    j["dinkelbach"] = dinkelbach_summary(m.result.trace);
    return j;
}

} // namespace

double path_length(const std::vector<Vec3>& trajectory) {
    double total = 0.0;
    for (std::size_t i = 1; i < trajectory.size(); ++i) total += (trajectory[i] - trajectory[i - 1]).norm();
    return total;
}

double relative_improvement(double see, double reference) { return (see - reference) / reference; }

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string trajectory_csv(const SolutionState& state, const Scenario& s) {
    std::ostringstream out;
    out << "n,x,y,z,v,phi_x,phi_z\n";
    for (std::size_t n = 0; n < state.trajectory.size(); ++n) {
        const Vec3& q = state.trajectory[n];
        const double v = n == 0 ? 0.0 : (q - state.trajectory[n - 1]).norm() / s.dt();
        const Orientation& o = n == 0 ? kMountOrientation : state.orientations[n - 1];
        out << n << ',' << format_double(q.x()) << ',' << format_double(q.y()) << ',' << format_double(q.z()) << ','
            << format_double(v) << ',' << format_double(o.phi_x) << ',' << format_double(o.phi_z) << '\n';
    }
    return out.str();
}

std::string convergence_csv(const ConvergenceTrace& trace) {
    std::ostringstream out;
    out << "k,see,sum_secrecy,total_energy\n";
    for (const auto& e : trace.entries)
        out << e.k << ',' << format_double(e.see) << ',' << format_double(e.sum_secrecy) << ','
            << format_double(e.total_energy) << '\n';
    return out.str();
}

std::string energy_csv(const SEEReport& report) {
    std::ostringstream out;
    out << "n,E_prop,E_MA,E_com\n";
    for (std::size_t i = 0; i < report.per_slot.size(); ++i) {
        const SlotReport& r = report.per_slot[i];
        out << i + 1 << ',' << format_double(r.e_prop) << ',' << format_double(r.e_ma) << ','
            << format_double(r.e_com) << '\n';
    }
    return out.str();
}

std::pair<Scenario, AOConfig> resolve_manifest(const RunManifest& manifest) {
    std::ifstream in(manifest.scenario_path);
    if (!in) throw std::ios_base::failure("cannot open scenario file '" + manifest.scenario_path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("<root>", std::string("malformed JSON: ") + e.what());
    }
    const ScenarioDocument d = parse_scenario(apply_overrides(std::move(doc), manifest.overrides));
    AOConfig cfg;
    cfg.eps_th = manifest.eps_th.value_or(d.solver.eps_th);
    cfg.max_outer = manifest.max_outer.value_or(d.solver.max_outer);
    cfg.model.bound_mode = manifest.bound_mode;
    cfg.seed = manifest.seed;
    validate_config(cfg);
    return {d.scenario, cfg};
}

ExperimentOutcome run_experiment(const RunManifest& manifest) {
    ExperimentOutcome out;
    Scenario scenario;
    AOConfig cfg;
    try {
        std::tie(scenario, cfg) = resolve_manifest(manifest);
    } catch (const SchemaError& e) {
        out.exit_code = kExitSchema;
        out.message = e.what();
        return out;
    } catch (const ValidationError& e) {
        out.exit_code = kExitSchema;
        out.message = e.what();
        return out;
    } catch (const std::ios_base::failure& e) {
        out.exit_code = kExitIo;
        out.message = e.what();
        return out;
    }

    const auto count = static_cast<int>(manifest.methods.size());
    out.methods.resize(manifest.methods.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
        MethodOutcome& m = out.methods[static_cast<std::size_t>(i)];
        m.method = manifest.methods[static_cast<std::size_t>(i)];
        const auto start = std::chrono::steady_clock::now();
        try {
            m.result = run_method(m.method, scenario, cfg);
            m.ok = true;
        } catch (const std::exception& e) {
            m.error = e.what();
        }
        m.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    std::optional<double> see_fixed, see_eve;
    for (const auto& m : out.methods) {
        if (!m.ok) continue;
        if (m.method == Method::Fixed) see_fixed = m.result.report.see;
        if (m.method == Method::EveOriented) see_eve = m.result.report.see;
    }

    try {
        for (const auto& m : out.methods) {
            const fs::path dir = fs::path(manifest.out_dir) / to_string(m.method);
            fs::create_directories(dir);
            if (m.ok) {
                write_file(dir / "trajectory.csv", trajectory_csv(m.result.state, scenario));
                write_file(dir / "convergence.csv", convergence_csv(m.result.trace));
                write_file(dir / "energy.csv", energy_csv(m.result.report));
            }
            write_file(dir / "summary.json", summary_json(m, manifest, see_fixed, see_eve).dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        out.exit_code = kExitIo;
        out.message = e.what();
        return out;
    }

    for (const auto& m : out.methods) {
        if (!m.ok) {
            out.exit_code = kExitSolver;
            out.message = std::string(to_string(m.method)) + ": " + m.error;
            break;
        }
    }
    return out;
}

int run_sweep(const RunManifest& manifest, const std::string& key, const std::vector<std::string>& values) {
    const auto count = static_cast<int>(values.size());
    std::vector<int> codes(values.size(), kExitOk);
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
        RunManifest m = manifest;
        const std::string& value = values[static_cast<std::size_t>(i)];
        m.overrides[key] = value;
        m.out_dir = (fs::path(manifest.out_dir) / (key + "=" + value)).string();
        const ExperimentOutcome o = run_experiment(m);
        if (o.exit_code != kExitOk) std::fprintf(stderr, "%s=%s: %s\n", key.c_str(), value.c_str(), o.message.c_str());
        codes[static_cast<std::size_t>(i)] = o.exit_code;
    }
    int worst = kExitOk;
    for (int c : codes) worst = std::max(worst, c);
    return worst;
}

} // namespace uavjam
