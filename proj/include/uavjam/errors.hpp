#pragma once

#include <stdexcept>
#include <string>

namespace uavjam {

// Input violates a documented precondition (shape, symmetry, range).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Iterative kernel failed to converge or produced non-finite output.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coincident endpoints or similar geometry that leaves a direction undefined.
class GeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Scenario parameters describe an infeasible problem instance.
class InfeasibleScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scenario document is missing a key or holds an invalid value for it.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace uavjam
