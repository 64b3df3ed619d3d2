#pragma once

#include <stdexcept>
#include <string>

namespace knots {

// Precondition / input violations. The CLI maps these to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Failures of the numerics themselves. The CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BranchPointError : ValidationError {
    BranchPointError() : ValidationError("point coincides with the branch point at the origin") {}
};

struct SectorBoundaryError : ValidationError {
    explicit SectorBoundaryError(double theta)
        : ValidationError("theta = " + std::to_string(theta) +
                          " lies on a sector boundary (integer multiple of pi)") {}
};

struct ContourParameterError : ValidationError {
    using ValidationError::ValidationError;
};

struct SeriesDomainError : ValidationError {
    using ValidationError::ValidationError;
};

struct AsymptoticDomainError : ValidationError {
    using ValidationError::ValidationError;
};

struct IntegerOrderError : ValidationError {
    explicit IntegerOrderError(double nu)
        : ValidationError("integer order nu = " + std::to_string(nu) +
                          " is outside the winding construction") {}
};

struct ForbiddenLabelError : ValidationError {
    ForbiddenLabelError(long M, long N)
        : ValidationError("label M = " + std::to_string(M) + " is a multiple of 2N = " +
                          std::to_string(2 * N) + " (forbidden)") {}
};

struct SectorError : ValidationError {
    using ValidationError::ValidationError;
};

struct StiffnessError : NumericalError {
    explicit StiffnessError(double s)
        : NumericalError("step size underflow near s = " + std::to_string(s)) {}
};

struct DecompositionError : NumericalError {
    using NumericalError::NumericalError;
};

struct DegeneracyError : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace knots
