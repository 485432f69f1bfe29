#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uavjam/scenario.hpp"

namespace uavjam {

/// Optional solver settings carried by a scenario document.
struct SolverSettings {
    double eps_th = 1e-4;
    int max_outer = 50;
};

struct ScenarioDocument {
    Scenario scenario;
    SolverSettings solver;
};

/// Scalar with an optional unit suffix: a JSON number in SI units, or a string such
/// as "-114 dBm", "28 GHz", "10 W". Throws SchemaError naming `key`.
double parse_quantity(const std::string& key, const nlohmann::json& value);

/// Builds a scenario from a parsed document. Positions take [x, y] or [x, y, z];
/// with two entries z comes from h_b (BS), h_j (flight endpoints), or 0 (ground nodes).
/// Throws SchemaError naming the offending key, including for infeasible instances.
ScenarioDocument parse_scenario(const nlohmann::json& doc);

/// Reads and parses a scenario file. Throws std::ios_base::failure when unreadable and
/// SchemaError for malformed content.
ScenarioDocument load_scenario_document(const std::string& path);
Scenario load_scenario(const std::string& path);

/// Replaces top-level keys; values are JSON text ("15", "\"-110 dBm\"") or bare strings.
nlohmann::json apply_overrides(nlohmann::json doc, const std::map<std::string, std::string>& overrides);

struct ValidationReport {
    bool readable = false;
    bool schema_ok = false;
    std::vector<std::string> findings; // "key: message"
    bool ok() const { return readable && schema_ok && findings.empty(); }
};

/// Schema and feasibility findings without running any optimization. Never throws.
ValidationReport validate_file(const std::string& path);

/// The bundled reference scenario as a document.
nlohmann::json table1_document();

} // namespace uavjam
