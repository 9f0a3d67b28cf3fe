#pragma once

#include <stdexcept>
#include <string>

namespace amo {

// Numerical failures carry a short machine-readable kind tag so the CLI can
// emit a structured error report (exit code 3).  Parameter/usage problems use
// std::invalid_argument / std::domain_error (exit code 2).
struct NumericalError : std::runtime_error {
    std::string kind;
    NumericalError(std::string k, const std::string& msg)
        : std::runtime_error(msg), kind(std::move(k)) {}
};

struct BoundaryBlowup : NumericalError {
    explicit BoundaryBlowup(const std::string& msg)
        : NumericalError("boundary blowup", msg) {}
};

struct NotElliptic : NumericalError {
    explicit NotElliptic(const std::string& msg)
        : NumericalError("not elliptic", msg) {}
};

struct BandResolutionFailure : NumericalError {
    double suspect_lo, suspect_hi;  // energy window of the suspected collapsed gap
    BandResolutionFailure(const std::string& msg, double lo, double hi)
        : NumericalError("band resolution failure", msg), suspect_lo(lo), suspect_hi(hi) {}
};

struct EdgeSingularity : NumericalError {
    explicit EdgeSingularity(const std::string& msg)
        : NumericalError("edge singularity", msg) {}
};

struct ContractionFailure : NumericalError {
    explicit ContractionFailure(const std::string& msg)
        : NumericalError("contraction failure", msg) {}
};

struct DegeneratePair : NumericalError {
    explicit DegeneratePair(const std::string& msg)
        : NumericalError("degenerate pair", msg) {}
};

struct DegenerateSample : NumericalError {
    explicit DegenerateSample(const std::string& msg)
        : NumericalError("degenerate sample", msg) {}
};

struct ResolutionError : NumericalError {
    explicit ResolutionError(const std::string& msg)
        : NumericalError("resolution", msg) {}
};

}  // namespace amo
