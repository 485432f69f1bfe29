#pragma once

#include <string>
#include <vector>

#include "uavjam/ao_driver.hpp"

namespace uavjam {

enum class Method { Proposed, Fixed, Direct, EveOriented };

const char* to_string(Method m);
/// Accepts "proposed", "fixed", "direct", "eve_oriented"; throws ValidationError otherwise.
Method parse_method(const std::string& s);

/// Config used for `method`, derived from the proposed-method config.
AOConfig method_config(Method m, const AOConfig& base);

/// Angles frozen at (0,0), no actuator energy; trajectory and beams optimized.
AOResult baseline_fixed_antenna(const Scenario& s, const AOConfig& base);
/// Straight-line trajectory; angles and beams optimized.
AOResult baseline_direct_path(const Scenario& s, const AOConfig& base);
/// Angles track the nominal eve; trajectory and beams optimized.
AOResult baseline_eve_oriented(const Scenario& s, const AOConfig& base);

AOResult run_method(Method m, const Scenario& s, const AOConfig& base);

/// Runs several methods concurrently; results follow the order of `methods`.
std::vector<AOResult> run_methods(const std::vector<Method>& methods, const Scenario& s, const AOConfig& base);

} // namespace uavjam
