#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace orthent {

/// Short %g rendering for error messages.
inline std::string format_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Base of every error raised by the library. `code()` is a stable,
/// machine-parsable token used by the CLI as the reason prefix.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Input or precondition problems.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error("precondition", what) {}
};

class InvalidSpecError : public Error {
public:
    explicit InvalidSpecError(const std::string& what) : Error("invalid_spec", what) {}
};

class PositivityError : public Error {
public:
    explicit PositivityError(const std::string& what) : Error("positivity", what) {}
};

class IntegrabilityError : public Error {
public:
    explicit IntegrabilityError(const std::string& what) : Error("integrability", what) {}
};

class DegreeRangeError : public Error {
public:
    explicit DegreeRangeError(const std::string& what) : Error("degree_range", what) {}
};

// Numerical failures.
class BudgetExceededError : public Error {
public:
    BudgetExceededError(const std::string& what, double partial_value, double partial_error)
        : Error("budget_exceeded", what), value_(partial_value), error_(partial_error) {}

    double partial_value() const noexcept { return value_; }
    double partial_error() const noexcept { return error_; }

private:
    double value_;
    double error_;
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error("non_convergence", what) {}
};

class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& what) : Error("divergence", what) {}
};

class OrthogonalityLossError : public Error {
public:
    explicit OrthogonalityLossError(const std::string& what) : Error("orthogonality_loss", what) {}
};

class RootOnCircleError : public Error {
public:
    explicit RootOnCircleError(const std::string& what) : Error("root_on_circle", what) {}
};

class PairingError : public Error {
public:
    explicit PairingError(const std::string& what) : Error("root_pairing", what) {}
};

class PoleError : public Error {
public:
    explicit PoleError(const std::string& what) : Error("pole", what) {}
};

class MassMismatchError : public Error {
public:
    explicit MassMismatchError(const std::string& what) : Error("mass_mismatch", what) {}
};

} // namespace orthent
