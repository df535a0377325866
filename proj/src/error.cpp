#include "thinlayer/error.hpp"

namespace thinlayer {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::IncompressibleInput: return "IncompressibleInput";
        case ErrorKind::InconsistentInputs: return "InconsistentInputs";
        case ErrorKind::RegimeMismatch: return "RegimeMismatch";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::OutOfDomain: return "OutOfDomain";
        case ErrorKind::RegularityViolation: return "RegularityViolation";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::NoContact: return "NoContact";
        case ErrorKind::NonStarShaped: return "NonStarShaped";
        case ErrorKind::NoAdhesion: return "NoAdhesion";
        case ErrorKind::Unreachable: return "Unreachable";
        case ErrorKind::BracketFailure: return "BracketFailure";
        case ErrorKind::ResonantMode: return "ResonantMode";
        case ErrorKind::DegenerateBase: return "DegenerateBase";
        case ErrorKind::NotUnimodal: return "NotUnimodal";
        case ErrorKind::NoSignChange: return "NoSignChange";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    }
    return "Unknown";
}

ErrorClass classify(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::IncompressibleInput:
        case ErrorKind::InconsistentInputs:
        case ErrorKind::RegimeMismatch:
        case ErrorKind::DomainError:
        case ErrorKind::OutOfDomain:
        case ErrorKind::RegularityViolation:
        case ErrorKind::ConfigError:
            return ErrorClass::Validation;
        case ErrorKind::QuadratureFailure:
        case ErrorKind::ToleranceNotMet:
            return ErrorClass::Tolerance;
        default:
            return ErrorClass::Solver;
    }
}

}  // namespace thinlayer
