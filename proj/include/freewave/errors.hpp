// Exception taxonomy shared by all modules. Every error carries a stable
// category name so the CLI can map failures to exit codes without parsing
// message text.
#pragma once

#include <stdexcept>
#include <string>

namespace freewave {

class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& msg)
        : std::runtime_error(category + ": " + msg), category_(std::move(category)) {}
    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

// Bad bounds, too few points, nonpositive dt, and similar precondition breaks.
class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& msg) : Error("invalid-argument", msg) {}
};

// Evaluation requested at t <= t0 for the non-separable action family.
class TimeDomainError : public Error {
public:
    explicit TimeDomainError(const std::string& msg) : Error("time-domain", msg) {}
};

// Reduced profile evaluated at a pole (Coulomb families at s = 0).
class SingularityError : public Error {
public:
    explicit SingularityError(const std::string& msg) : Error("singularity", msg) {}
};

// Family has no closed-form amplitude (Mathieu, non-integer-degree Legendre).
class NoClosedFormError : public Error {
public:
    explicit NoClosedFormError(const std::string& msg) : Error("no-closed-form", msg) {}
};

// DeltaTrap profile is a distribution, never a pointwise function.
class NotAFunctionError : public Error {
public:
    explicit NotAFunctionError(const std::string& msg) : Error("not-a-function", msg) {}
};

// Grid point mapped outside an amplitude profile's sampled interval.
class RangeError : public Error {
public:
    explicit RangeError(const std::string& msg) : Error("range", msg) {}
};

// Action variant does not match the potential family's variant.
class VariantMismatchError : public Error {
public:
    explicit VariantMismatchError(const std::string& msg) : Error("variant-mismatch", msg) {}
};

// State provenance does not match the potential it is checked against.
class FamilyMismatchError : public Error {
public:
    explicit FamilyMismatchError(const std::string& msg) : Error("family-mismatch", msg) {}
};

// NaN/Inf detected in a field; singular inputs must be excluded, not masked.
class NonFiniteError : public Error {
public:
    explicit NonFiniteError(const std::string& msg) : Error("non-finite", msg) {}
};

// Adaptive integrator could not meet the requested tolerance.
class StepFailureError : public Error {
public:
    explicit StepFailureError(const std::string& msg) : Error("step-failure", msg) {}
};

// More than the allowed fraction of points fell below the amplitude floor.
class AllNodesError : public Error {
public:
    explicit AllNodesError(const std::string& msg) : Error("all-nodes", msg) {}
};

// Residuals failed to decrease under grid refinement.
class NonMonotoneError : public Error {
public:
    explicit NonMonotoneError(const std::string& msg) : Error("non-monotone", msg) {}
};

// |psi| at a wall exceeded the guard threshold during evolution.
class WallContaminationError : public Error {
public:
    explicit WallContaminationError(const std::string& msg) : Error("wall-contamination", msg) {}
};

// Config invalid: unknown keys, schema mismatch, unsupported format.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error("config", msg) {}
};

// Sweep would exceed the combination limit.
class CombinatorialLimitError : public Error {
public:
    explicit CombinatorialLimitError(const std::string& msg) : Error("combinatorial-limit", msg) {}
};

// Filesystem failure while writing outputs.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("io", msg) {}
};

}  // namespace freewave
