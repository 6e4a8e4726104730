#pragma once

#include <stdexcept>
#include <string>

namespace magmech {

/// Invalid or incomplete configuration input. Carries the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Base class for numerical failures (poles, singular systems, non-convergence).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A denominator evaluated to exactly zero.
class PoleError : public SolverError {
public:
    PoleError(std::string coefficient, double delta)
        : SolverError("pole in " + coefficient + " at delta = " + std::to_string(delta) + " rad/s"),
          coefficient_(std::move(coefficient)), delta_(delta) {}

    const std::string& coefficient() const noexcept { return coefficient_; }
    double delta() const noexcept { return delta_; }

private:
    std::string coefficient_;
    double delta_;
};

class SingularSystemError : public SolverError {
public:
    SingularSystemError(const std::string& what, double condition_estimate)
        : SolverError(what), condition_(condition_estimate) {}

    double condition_estimate() const noexcept { return condition_; }

private:
    double condition_;
};

class ConvergenceError : public SolverError {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : SolverError(what), residual_(last_residual) {}

    double last_residual() const noexcept { return residual_; }

private:
    double residual_;
};

class UnknownPresetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace magmech
