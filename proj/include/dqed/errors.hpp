#pragma once

#include <stdexcept>
#include <string>

namespace dqed {

/// Base for every numerical failure raised by the library.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
    SolverError(const std::string& what, double t)
        : std::runtime_error(what + " (t = " + std::to_string(t) + ")"), t_(t), has_t_(true) {}

    bool has_time() const noexcept { return has_t_; }
    double time() const noexcept { return t_; }

private:
    double t_ = 0.0;
    bool has_t_ = false;
};

// Padé Hankel system is rank deficient; the caller should lower N.
class SingularPadeSystem : public SolverError {
    using SolverError::SolverError;
};

// Numerator degree >= denominator degree in the s-domain.
class ImproperRational : public SolverError {
    using SolverError::SolverError;
};

// b0 == 1 makes the sigma-1 initial condition singular.
class DegenerateAmplitude : public SolverError {
    using SolverError::SolverError;
};

class RootJump : public SolverError {
    using SolverError::SolverError;
};

class SingularDenominator : public SolverError {
    using SolverError::SolverError;
};

class ImplicitSingularity : public SolverError {
    using SolverError::SolverError;
};

class StepUnderflow : public SolverError {
    using SolverError::SolverError;
};

/// Invalid user configuration. The message names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace dqed
