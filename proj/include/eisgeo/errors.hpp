#pragma once

#include <stdexcept>
#include <string>

namespace eisgeo {

// Input outside the mathematical domain of an operation (bad D, pole, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct InertPrime : DomainError {
    explicit InertPrime(const std::string& what) : DomainError(what) {}
};

struct NoAdmissibleCharacter : DomainError {
    explicit NoAdmissibleCharacter(const std::string& what) : DomainError(what) {}
};

struct NotApplicable : std::logic_error {
    using std::logic_error::logic_error;
};

struct NonTransverse : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct VerificationMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ToleranceNotMet : std::runtime_error {
    ToleranceNotMet(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate(estimate), error(error) {}
    double estimate;
    double error;
};

} // namespace eisgeo
