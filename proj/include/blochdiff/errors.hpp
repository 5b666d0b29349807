#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace blochdiff {

using Cplx = std::complex<double>;

/// Input outside the open unit disk, or an evaluation left the domain.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A custom weight evaluated to a non-positive value.
class WeightError : public std::runtime_error {
public:
    explicit WeightError(const std::string& what) : std::runtime_error(what) {}
};

/// A map tagged as a self-map reached modulus >= 1 - margin; carries the witness point.
class SelfMapViolation : public std::runtime_error {
public:
    SelfMapViolation(const std::string& what, Cplx witness, double modulus)
        : std::runtime_error(what), witness_(witness), modulus_(modulus) {}
    Cplx witness() const { return witness_; }
    double modulus() const { return modulus_; }

private:
    Cplx witness_;
    double modulus_;
};

/// A truncation order exceeded the configured cap, or a tail bound cannot close.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration (parse errors, parameter ranges, unknown names).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace blochdiff
