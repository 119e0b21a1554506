#pragma once

#include <stdexcept>
#include <string>

namespace wavelab {

/// Argument outside the mathematical domain of a closure function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A construction was asked for something its preconditions exclude
/// (wrong regime, wrong side of a wave curve, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the time integrator when a run cannot continue
/// (positivity loss, dt underflow, shift blow-up).
class SolverAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wavelab
