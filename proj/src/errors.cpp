#include "meniscus/errors.hpp"

namespace meniscus {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::OutOfDomain: return "OutOfDomain";
        case ErrorKind::NonSmooth: return "NonSmooth";
        case ErrorKind::ProfileViolation: return "ProfileViolation";
        case ErrorKind::IntegrationFailure: return "IntegrationFailure";
        case ErrorKind::DegenerateFilm: return "DegenerateFilm";
        case ErrorKind::ConstraintViolation: return "ConstraintViolation";
        case ErrorKind::GridTooSmall: return "GridTooSmall";
        case ErrorKind::SingularClosure: return "SingularClosure";
        case ErrorKind::MapDegenerate: return "MapDegenerate";
        case ErrorKind::NewtonDiverged: return "NewtonDiverged";
        case ErrorKind::Rupture: return "Rupture";
        case ErrorKind::ZeroContactAngle: return "ZeroContactAngle";
        case ErrorKind::EnergyConstraintViolation: return "EnergyConstraintViolation";
        case ErrorKind::VolumeUnattainable: return "VolumeUnattainable";
        case ErrorKind::NonPositiveSeries: return "NonPositiveSeries";
        case ErrorKind::SingularConstraint: return "SingularConstraint";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace meniscus
