#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "common.hpp"
#include "uavjam/errors.hpp"
#include "uavjam/experiment.hpp"
#include "uavjam/scenario_io.hpp"

using namespace uavjam;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kTable1 = std::string(UAVJAM_DATA_DIR) + "/table1.json";

std::string schema_key(const json& doc) {
    try {
        parse_scenario(doc);
    } catch (const SchemaError& e) {
        return e.key();
    }
    return "";
}

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("uavjam_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("bundled table1 scenario matches the built-in defaults") {
    const ScenarioDocument d = load_scenario_document(kTable1);
    const Scenario ref = Scenario::table1();
    const Scenario& s = d.scenario;
    CHECK(s.q_b == ref.q_b);
    CHECK(s.q_u == ref.q_u);
    CHECK(s.q_e == ref.q_e);
    CHECK(s.q_i == ref.q_i);
    CHECK(s.q_f == ref.q_f);
    CHECK(s.p_b == ref.p_b);
    CHECK(s.p_j == ref.p_j);
    CHECK(s.sigma2_u == doctest::Approx(3.981071705534969e-15).epsilon(1e-12));
    CHECK(s.frequency == 28e9);
    CHECK(s.epsilon == ref.epsilon);
    CHECK(s.n_step == ref.n_step);
    CHECK(s.n_ma() == 16);
    CHECK(s.rotor.p0 == ref.rotor.p0);
    CHECK(s.ma.zeta == ref.ma.zeta);
    CHECK(s.ma.omega_el_max == doctest::Approx(std::numbers::pi / 4));
    CHECK(d.solver.eps_th == 1e-4);
    CHECK(d.solver.max_outer == 50);
    CHECK(parse_scenario(table1_document()).scenario.q_e == ref.q_e);
    CHECK(validate_file(kTable1).ok());
}

TEST_CASE("quantities with units") {
    CHECK(parse_quantity("sigma2_u", "-114 dBm") == doctest::Approx(3.981071705534969e-15).epsilon(1e-12));
    CHECK(parse_quantity("p_b", "100 W") == 100.0);
    CHECK(parse_quantity("p_b", "500 mW") == doctest::Approx(0.5));
    CHECK(parse_quantity("f", "28 GHz") == 28e9);
    CHECK(parse_quantity("f", 2.4e9) == 2.4e9);
    CHECK(parse_quantity("omega_el_max", "0.5 rad/s") == 0.5);
    CHECK_THROWS_AS(parse_quantity("p_b", "100 furlongs"), SchemaError);
    CHECK_THROWS_AS(parse_quantity("p_b", json::array()), SchemaError);
    CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
}

TEST_CASE("missing or invalid keys are named") {
    json doc = table1_document();
    doc.erase("p_j");
    CHECK(schema_key(doc) == "p_j");
    doc = table1_document();
    doc["q_u"] = json::array({1.0});
    CHECK(schema_key(doc) == "q_u");
    doc = table1_document();
    doc.erase("omega_el_max");
    doc.erase("omega_az_max");
    CHECK(schema_key(doc).empty());
    CHECK(parse_scenario(doc).scenario.ma.omega_az_max == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("infeasible scenarios are rejected with the offending key") {
    json doc = table1_document();
    doc["v_max"] = 5.0;
    CHECK(schema_key(doc) == "v_max");
    doc = table1_document();
    doc["epsilon"] = 200.0;
    CHECK(schema_key(doc) == "epsilon");
    Scenario s = Scenario::table1();
    s.v_max = 5.0;
    CHECK_FALSE(feasibility_findings(s).empty());
    CHECK_THROWS_AS(validate_scenario(s), InfeasibleScenarioError);
}

TEST_CASE("validation never throws and reports unreadable files") {
    const ValidationReport missing = validate_file("/nonexistent/scenario.json");
    CHECK_FALSE(missing.readable);
    const fs::path dir = scratch_dir("validate");
    std::ofstream(dir / "bad.json") << "{ not json";
    const ValidationReport bad = validate_file((dir / "bad.json").string());
    CHECK(bad.readable);
    CHECK_FALSE(bad.ok());
    std::ofstream(dir / "slow.json") << [] {
        json d = table1_document();
        d["v_max"] = 5.0;
        return d.dump();
    }();
    const ValidationReport slow = validate_file((dir / "slow.json").string());
    REQUIRE_FALSE(slow.findings.empty());
    CHECK(slow.findings.front().rfind("v_max: ", 0) == 0);
}

TEST_CASE("overrides replace top-level keys") {
    const json d = apply_overrides(table1_document(), {{"p_j", "5"}, {"sigma2_u", "-110 dBm"}});
    const Scenario s = parse_scenario(d).scenario;
    CHECK(s.p_j == 5.0);
    CHECK(s.sigma2_u == doctest::Approx(dbm_to_watt(-110.0)));
}

TEST_CASE("CSV formats and improvement arithmetic") {
    const SystemModel m(testing::small_scenario());
    const SolutionState st = initial_state(m);
    const std::string traj = trajectory_csv(st, m.scenario());
    CHECK(traj.rfind("n,x,y,z,v,phi_x,phi_z\n0,-50,0,50,0,0,0\n1,-30,0,50,10,0,0\n", 0) == 0);
    const std::string energy = energy_csv(see_objective(st, m));
    CHECK(energy.rfind("n,E_prop,E_MA,E_com\n1,", 0) == 0);
    CHECK(std::count(energy.begin(), energy.end(), '\n') == 11);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(relative_improvement(1.1, 1.0) == doctest::Approx(0.1));
    CHECK(path_length(straight_line(m.scenario())) == doctest::Approx(200.0));
}

TEST_CASE("a single-method run writes only that method's subtree") {
    const fs::path dir = scratch_dir("single");
    json doc = table1_document();
    doc["q_i"] = json::array({-50.0, 0.0});
    doc["q_f"] = json::array({150.0, 0.0});
    doc["t_flight"] = 20.0;
    doc["n_step"] = 10;
    std::ofstream(dir / "small.json") << doc.dump();
    RunManifest man;
    man.scenario_path = (dir / "small.json").string();
    man.methods = {Method::Fixed};
    man.out_dir = (dir / "out").string();
    man.max_outer = 2;
    const ExperimentOutcome o = run_experiment(man);
    CHECK(o.exit_code == kExitOk);
    CHECK(fs::exists(dir / "out" / "fixed" / "trajectory.csv"));
    CHECK(fs::exists(dir / "out" / "fixed" / "convergence.csv"));
    CHECK(fs::exists(dir / "out" / "fixed" / "energy.csv"));
    CHECK_FALSE(fs::exists(dir / "out" / "proposed"));
    std::ifstream in(dir / "out" / "fixed" / "summary.json");
    const json summary = json::parse(in);
    CHECK(summary["method"] == "fixed");
    CHECK(summary["improvement_vs_eve_oriented"].is_null());
    CHECK(summary["e_ma"] == 0.0);
}

TEST_CASE("experiment exit codes") {
    const fs::path dir = scratch_dir("codes");
    RunManifest man;
    man.scenario_path = (dir / "missing.json").string();
    CHECK(run_experiment(man).exit_code == kExitIo);
    json doc = table1_document();
    doc.erase("f");
    std::ofstream(dir / "nof.json") << doc.dump();
    man.scenario_path = (dir / "nof.json").string();
    const ExperimentOutcome o = run_experiment(man);
    CHECK(o.exit_code == kExitSchema);
    CHECK(o.message.rfind("f: ", 0) == 0);
}
