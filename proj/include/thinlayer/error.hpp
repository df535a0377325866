#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thinlayer {

/// Failure taxonomy shared by the solvers, the oracle and the CLI.
enum class ErrorKind {
    // invalid or contradictory input
    InvalidArgument,
    IncompressibleInput,
    InconsistentInputs,
    RegimeMismatch,
    DomainError,
    OutOfDomain,
    RegularityViolation,
    ConfigError,
    // the problem has no (usable) solution
    NoContact,
    NonStarShaped,
    NoAdhesion,
    Unreachable,
    BracketFailure,
    ResonantMode,
    DegenerateBase,
    NotUnimodal,
    NoSignChange,
    SingularSystem,
    // numerical accuracy could not be certified
    QuadratureFailure,
    ToleranceNotMet,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Coarse class of an ErrorKind; drives the CLI exit code.
enum class ErrorClass { Validation, Solver, Tolerance };

ErrorClass classify(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
    throw Error(kind, detail);
}

}  // namespace thinlayer
