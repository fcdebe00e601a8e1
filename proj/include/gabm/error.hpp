#pragma once

#include <stdexcept>
#include <string>

namespace gabm {

/// Invalid configuration, presets or persona pools. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A decision backend could not produce an outcome. Maps to CLI exit code 3.
class BackendError : public std::runtime_error {
public:
    BackendError(const std::string& what, bool retryable = false)
        : std::runtime_error(what), retryable_(retryable)
    {
    }
    bool retryable() const noexcept { return retryable_; }

private:
    bool retryable_;
};

/// File system and serialization failures. Maps to CLI exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checkpoint could not be read back; the message names the offending field.
class CheckpointError : public IoError {
public:
    using IoError::IoError;
};

/// Checkpoint was written by an incompatible schema version.
class SchemaVersionError : public CheckpointError {
public:
    using CheckpointError::CheckpointError;
};

/// Bad input to an analytics routine (empty run list, zero window, degenerate outcome...).
class AnalyticsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace gabm
