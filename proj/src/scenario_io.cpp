#include "uavjam/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "uavjam/errors.hpp"

namespace uavjam {

using nlohmann::json;

namespace {

struct Unit {
    const char* name;
    double scale;
    bool dbm;
};

constexpr Unit kUnits[] = {
    {"dBm", 0.0, true}, {"W", 1.0, false},    {"mW", 1e-3, false}, {"GHz", 1e9, false}, {"MHz", 1e6, false},
    {"kHz", 1e3, false}, {"Hz", 1.0, false},  {"m", 1.0, false},   {"s", 1.0, false},   {"m/s", 1.0, false},
    {"rad/s", 1.0, false}, {"W/rad", 1.0, false},
};

const json& require(const json& doc, const std::string& key) {
    const auto it = doc.find(key);
    if (it == doc.end()) throw SchemaError(key, "missing required key");
    return *it;
}

double number(const json& doc, const std::string& key) { return parse_quantity(key, require(doc, key)); }

double number_or(const json& doc, const std::string& key, double fallback) {
    const auto it = doc.find(key);
    return it == doc.end() ? fallback : parse_quantity(key, *it);
}

int integer(const json& doc, const std::string& key) {
    const json& v = require(doc, key);
    if (!v.is_number_integer()) throw SchemaError(key, "expected an integer");
    return v.get<int>();
}

Vec3 position(const json& doc, const std::string& key, double default_z) {
    const json& v = require(doc, key);
    if (!v.is_array() || (v.size() != 2 && v.size() != 3))
        throw SchemaError(key, "expected [x, y] or [x, y, z]");
    Vec3 p;
    for (std::size_t i = 0; i < v.size(); ++i) p(static_cast<Eigen::Index>(i)) = parse_quantity(key, v[i]);
    if (v.size() == 2) p.z() = default_z;
    return p;
}

// Key that a feasibility finding is about.
std::string finding_key(const std::string& finding) {
    static const char* keys[] = {"v_max", "n_ma", "h_j", "q_i", "q_b", "epsilon", "frequency"};
    for (const char* k : keys)
        if (finding.rfind(k, 0) == 0) return k == std::string("frequency") ? "f" : k;
    if (finding.rfind("powers", 0) == 0) return "p_b";
    if (finding.rfind("noise", 0) == 0) return "sigma2_u";
    if (finding.rfind("n_step", 0) == 0) return "n_step";
    if (finding.rfind("t_flight", 0) == 0) return "t_flight";
    if (finding.rfind("antenna", 0) == 0) return "n_b";
    if (finding.rfind("ground", 0) == 0) return "q_u";
    if (finding.rfind("rotor", 0) == 0) return "p_0";
    if (finding.rfind("MA", 0) == 0) return "p_base";
    if (finding.rfind("BS lies", 0) == 0) return "epsilon";
    return "scenario";
}

} // namespace

double parse_quantity(const std::string& key, const json& value) {
    double out = 0.0;
    if (value.is_number()) {
        out = value.get<double>();
    } else if (value.is_string()) {
        std::istringstream in(value.get<std::string>());
        double magnitude = 0.0;
        std::string unit;
        if (!(in >> magnitude)) throw SchemaError(key, "cannot parse '" + value.get<std::string>() + "'");
        in >> unit;
        std::string rest;
        if (in >> rest) throw SchemaError(key, "trailing text in '" + value.get<std::string>() + "'");
        if (unit.empty()) {
            out = magnitude;
        } else {
            const Unit* match = nullptr;
            for (const Unit& u : kUnits)
                if (unit == u.name) match = &u;
            if (!match) throw SchemaError(key, "unknown unit '" + unit + "'");
            out = match->dbm ? dbm_to_watt(magnitude) : magnitude * match->scale;
        }
    } else {
        throw SchemaError(key, "expected a number or a quantity string");
    }
    if (!std::isfinite(out)) throw SchemaError(key, "value is not finite");
    return out;
}

namespace {

ScenarioDocument parse_fields(const json& doc) {
    if (!doc.is_object()) throw SchemaError("<root>", "expected a JSON object");
    ScenarioDocument out;
    Scenario& s = out.scenario;
    s.h_b = number(doc, "h_b");
    s.h_j = number(doc, "h_j");
    s.q_b = position(doc, "q_b", s.h_b);
    s.q_u = position(doc, "q_u", 0.0);
    s.q_e = position(doc, "q_e", 0.0);
    s.q_i = position(doc, "q_i", s.h_j);
    s.q_f = position(doc, "q_f", s.h_j);
    s.p_b = number(doc, "p_b");
    s.p_j = number(doc, "p_j");
    s.sigma2_u = number(doc, "sigma2_u");
    s.sigma2_e = number(doc, "sigma2_e");
    s.alpha_bu = number(doc, "alpha_bu");
    s.alpha_be = number(doc, "alpha_be");
    s.alpha_ju = number(doc, "alpha_ju");
    s.alpha_je = number(doc, "alpha_je");
    s.frequency = number(doc, "f");
    s.epsilon = number(doc, "epsilon");
    s.t_flight = number(doc, "t_flight");
    s.n_step = integer(doc, "n_step");
    s.v_max = number(doc, "v_max");
    s.n_b = integer(doc, "n_b");
    s.n_ma_x = integer(doc, "n_ma_x");
    s.n_ma_y = integer(doc, "n_ma_y");

    auto& r = s.rotor;
    r.p0 = number(doc, "p_0");
    r.p1 = number(doc, "p_1");
    r.u_tip_sq = number(doc, "u_tip_sq");
    r.v0 = number(doc, "v_0");
    r.r_drag = number(doc, "r_drag");
    r.rho = number(doc, "rho");
    r.s = number(doc, "s");
    r.a = number(doc, "a");

    auto& m = s.ma;
    m.p_base = number(doc, "p_base");
    m.zeta = number(doc, "zeta");
    m.xi = number(doc, "xi");
    m.omega_el_max = number_or(doc, "omega_el_max", MAPowerParams{}.omega_el_max);
    m.omega_az_max = number_or(doc, "omega_az_max", MAPowerParams{}.omega_az_max);

    if (const auto it = doc.find("solver"); it != doc.end()) {
        if (!it->is_object()) throw SchemaError("solver", "expected an object");
        out.solver.eps_th = number_or(*it, "eps_th", out.solver.eps_th);
        if (const auto mo = it->find("max_outer"); mo != it->end()) {
            if (!mo->is_number_integer()) throw SchemaError("max_outer", "expected an integer");
            out.solver.max_outer = mo->get<int>();
        }
        if (!(out.solver.eps_th > 0.0)) throw SchemaError("eps_th", "must be positive");
        if (out.solver.max_outer < 1) throw SchemaError("max_outer", "must be at least 1");
    }

    return out;
}

} // namespace

ScenarioDocument parse_scenario(const json& doc) {
    ScenarioDocument out = parse_fields(doc);
    const auto findings = feasibility_findings(out.scenario);
    if (!findings.empty()) throw SchemaError(finding_key(findings.front()), findings.front());
    return out;
}

ScenarioDocument load_scenario_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open scenario file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("<root>", std::string("malformed JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

Scenario load_scenario(const std::string& path) { return load_scenario_document(path).scenario; }

json apply_overrides(json doc, const std::map<std::string, std::string>& overrides) {
    for (const auto& [key, text] : overrides) {
        json value;
        try {
            value = json::parse(text);
        } catch (const json::parse_error&) {
            value = text; // bare quantity such as -110 dBm
        }
        doc[key] = std::move(value);
    }
    return doc;
}

ValidationReport validate_file(const std::string& path) {
    ValidationReport rep;
    std::ifstream in(path);
    if (!in) {
        rep.findings.push_back("<file>: cannot open '" + path + "'");
        return rep;
    }
    rep.readable = true;
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        rep.findings.push_back(std::string("<root>: malformed JSON: ") + e.what());
        return rep;
    }
    try {
        const ScenarioDocument d = parse_fields(doc);
        rep.schema_ok = true;
        for (const auto& f : feasibility_findings(d.scenario)) rep.findings.push_back(finding_key(f) + ": " + f);
    } catch (const SchemaError& e) {
        rep.findings.push_back(e.what());
    }
    return rep;
}

json table1_document() {
    return json{
        {"n_b", 4},           {"n_ma_x", 4},        {"n_ma_y", 4},           {"n_step", 40},
        {"h_b", 12.5},        {"h_j", 50},          {"q_b", {0, 0}},         {"q_u", {100, 150, 0}},
        {"q_e", {150, 100, 0}}, {"q_i", {-100, 0}},  {"q_f", {300, 0}},       {"p_b", "100 W"},
        {"p_j", "10 W"},      {"alpha_bu", 3.5},    {"alpha_be", 3.5},       {"alpha_ju", 2.8},
        {"alpha_je", 2.8},    {"sigma2_u", "-114 dBm"}, {"sigma2_e", "-114 dBm"}, {"f", "28 GHz"},
        {"epsilon", 50},      {"t_flight", 40},     {"v_max", 15},           {"v_0", 2.5669},
        {"p_base", 2},        {"zeta", 0.05},       {"xi", 0.03},            {"p_0", 125.4},
        {"p_1", 200},         {"a", 0.79},          {"s", 0.05},             {"r_drag", 0.6},
        {"rho", 1.225},       {"u_tip_sq", 8100},
    };
}

} // namespace uavjam
