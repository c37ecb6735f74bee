#pragma once

#include <stdexcept>
#include <string>

namespace pnest {

// Thrown when an operator expected to be parity nested couples distinct
// parity sectors beyond tolerance.
struct ParityViolation : std::runtime_error {
    explicit ParityViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an error word degenerates (vanishing or linearly dependent
// images where an orthonormal pair is required).
struct DegenerateError : std::runtime_error {
    explicit DegenerateError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a code does not correct the requested error set.
struct NotCorrectable : std::runtime_error {
    explicit NotCorrectable(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a constrained linear system has no solution within tolerance.
struct InconsistentSystem : std::runtime_error {
    explicit InconsistentSystem(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when halving the integrator step changes the result beyond tolerance.
struct StepSizeFailure : std::runtime_error {
    explicit StepSizeFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a fit is requested on fewer points than the model needs.
struct InsufficientPoints : std::runtime_error {
    explicit InsufficientPoints(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pnest
