/**
 * @file errors.hpp
 * @brief Error kinds raised by the meniscus solver library.
 *
 * Every failure is reported through a single exception type carrying an
 * ErrorKind tag, so callers (the CLI in particular) can map failures to exit
 * codes without string matching.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace meniscus {

enum class ErrorKind {
    InvalidArgument,
    OutOfDomain,
    NonSmooth,
    ProfileViolation,
    IntegrationFailure,
    DegenerateFilm,
    ConstraintViolation,
    GridTooSmall,
    SingularClosure,
    MapDegenerate,
    NewtonDiverged,
    Rupture,
    ZeroContactAngle,
    EnergyConstraintViolation,
    VolumeUnattainable,
    NonPositiveSeries,
    SingularConstraint,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace meniscus
