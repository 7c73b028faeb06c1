#pragma once

#include <stdexcept>
#include <string>

namespace lgi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise malformed numeric input.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A coherency matrix that is not Hermitian or not positive semidefinite.
class InvalidState : public Error {
public:
    using Error::Error;
};

/// Stokes parameters outside the Poincare ball (degree of polarization > 1).
class UnphysicalState : public Error {
public:
    using Error::Error;
};

class UndefinedDop : public Error {
public:
    using Error::Error;
};

/// Measurement outcome outside {-1, +1}.
class InvalidOutcome : public Error {
public:
    using Error::Error;
};

/// Intensity table whose entries sum to zero.
class UndefinedCorrelation : public Error {
public:
    using Error::Error;
};

/// A noisy intensity table whose entries sum to <= 0.
class DegenerateSample : public Error {
public:
    using Error::Error;
};

/// Invalid sweep configuration; carries the offending field name.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lgi
