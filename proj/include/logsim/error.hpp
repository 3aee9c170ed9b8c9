#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logsim {

// Base of every error raised by the library. Callers that only need a
// diagnostic can catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input data does not have the expected shape (missing column, empty file).
class SchemaError : public Error {
public:
    using Error::Error;
};

class EmptyLogError : public SchemaError {
public:
    using SchemaError::SchemaError;
};

// A single input row could not be interpreted.
class RowError : public Error {
public:
    RowError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    // For rows that no longer have a source line (e.g. in-memory logs).
    explicit RowError(const std::string& what) : Error(what), line_(0) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Net or marking references something that does not exist.
class StructuralError : public Error {
public:
    using Error::Error;
};

// An operation was invoked outside its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class WorkflowNetError : public StructuralError {
public:
    using StructuralError::StructuralError;
};

class PnmlError : public Error {
public:
    using Error::Error;
};

class DiscoveryError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// A user-supplied option value is malformed.
class OptionError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class SimulationError : public Error {
public:
    using Error::Error;
};

}  // namespace logsim
