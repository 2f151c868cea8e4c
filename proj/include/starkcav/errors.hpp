#pragma once

#include <stdexcept>
#include <string>

namespace starkcav {

// Symmetric-backend spectrum too close to degenerate for the closed-form
// weights; callers should fall back to the exact backend.
struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Populations outside [0,1]-type bounds (closed forms can produce these;
// they are reported, never clamped).
struct InvalidPopulationsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Density-matrix invariant violated (trace, Hermiticity, PSD bound).
struct InvalidStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Eigensolver failed or reconstruction residual too large. Carries a dump
// of the offending matrix for diagnosis.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive integrator could not meet its error target (step underflow).
struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& what, double at_time)
        : std::runtime_error(what), time(at_time) {}
    double time;
};

// Poisson truncation leaves too much tail mass.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace starkcav
