#pragma once

#include <stdexcept>
#include <string>

namespace ambit {

/// Thrown when a cumulant function is evaluated outside its domain.
/// The message names the offending parameter bound, so callers can surface
/// the finite critical order of a basis programmatically.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when an adaptive quadrature fails to reach the requested
/// tolerance; carries the achieved error estimate in the message.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

}  // namespace ambit
