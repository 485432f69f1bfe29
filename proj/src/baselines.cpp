#include "uavjam/baselines.hpp"

#include "uavjam/errors.hpp"

namespace uavjam {

const char* to_string(Method m) {
    switch (m) {
    case Method::Proposed: return "proposed";
    case Method::Fixed: return "fixed";
    case Method::Direct: return "direct";
    case Method::EveOriented: return "eve_oriented";
    }
    return "proposed";
}

Method parse_method(const std::string& s) {
    if (s == "proposed") return Method::Proposed;
    if (s == "fixed") return Method::Fixed;
    if (s == "direct") return Method::Direct;
    if (s == "eve_oriented") return Method::EveOriented;
    throw ValidationError("unknown method '" + s + "' (expected proposed, fixed, direct, eve_oriented)");
}

AOConfig method_config(Method m, const AOConfig& base) {
    AOConfig cfg = base;
    switch (m) {
    case Method::Proposed: break;
    case Method::Fixed:
        cfg.angles = AnglePolicy::Frozen;
        cfg.model.ma_actuation = false;
        break;
    case Method::Direct: cfg.optimize_trajectory = false; break;
    case Method::EveOriented: cfg.angles = AnglePolicy::EveOriented; break;
    }
    return cfg;
}

AOResult baseline_fixed_antenna(const Scenario& s, const AOConfig& base) {
    return run(s, method_config(Method::Fixed, base));
}

AOResult baseline_direct_path(const Scenario& s, const AOConfig& base) {
    return run(s, method_config(Method::Direct, base));
}

AOResult baseline_eve_oriented(const Scenario& s, const AOConfig& base) {
    return run(s, method_config(Method::EveOriented, base));
}

AOResult run_method(Method m, const Scenario& s, const AOConfig& base) { return run(s, method_config(m, base)); }

std::vector<AOResult> run_methods(const std::vector<Method>& methods, const Scenario& s, const AOConfig& base) {
    std::vector<BatchJob> jobs;
    for (Method m : methods) jobs.push_back({s, method_config(m, base)});
    return run_batch(jobs);
}

} // namespace uavjam
