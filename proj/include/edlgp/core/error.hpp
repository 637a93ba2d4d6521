#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edlgp {

// Base of every error the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad run configuration (unknown key, unsupported channel count, invalid rates).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent input data (bad magic, truncated file, short class).
class DataError : public Error {
public:
    using Error::Error;
};

// A parameter outside the domain a primitive accepts.
class DomainError : public Error {
public:
    using Error::Error;
};

// Caller misuse: signature mismatch between a fitted model and new data, etc.
class UsageError : public Error {
public:
    using Error::Error;
};

// Broken invariant inside the engine.
class InternalError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::string const& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position))
        , position_(position)
    {
    }

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Failure while executing a tree; carries the path of the failing node
// (child indices from the root, e.g. "0.1.0").
class ExecutionError : public Error {
public:
    ExecutionError(std::string const& what, std::string node_path)
        : Error(what + " (node " + (node_path.empty() ? std::string("root") : node_path) + ")")
        , path_(std::move(node_path))
    {
    }

    [[nodiscard]] std::string const& node_path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace edlgp
