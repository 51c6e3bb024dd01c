#pragma once

#include <stdexcept>
#include <string>

namespace chute {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A degenerate (dry, h <= h_dry) state was passed to an operation that
/// requires positive depth.
class DryStateError : public Error {
public:
    using Error::Error;
};

/// Input outside the operation's admissible set (wrong region, supersonic
/// state where subsonic is required, nonpositive depth parameter, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Riemann data would open a vacuum (the wave curves do not intersect at
/// positive depth).
class VacuumError : public Error {
public:
    using Error::Error;
};

/// An iteration failed to converge or a bracket could not be established.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A conservative update produced a nonpositive water depth.
class PositivityError : public Error {
public:
    using Error::Error;
};

/// Scenario configuration is malformed or violates the schema.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace chute
