#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace taxograft {

/// Malformed input data: bad file lines, duplicate entries. Messages carry
/// line numbers where known.
class LoadError : public std::runtime_error {
public:
    explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

/// Taxonomy shape violations: multiple roots, cycles, disconnection.
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// Remote I/O failure after all retries were exhausted.
class TransportError : public std::runtime_error {
public:
    TransportError(const std::string& what, int attempts)
        : std::runtime_error(what), attempts_(attempts) {}
    int attempts() const { return attempts_; }

private:
    int attempts_ = 0;
};

/// Remote endpoint answered with a non-success status.
class EndpointError : public std::runtime_error {
public:
    EndpointError(const std::string& what, int status)
        : std::runtime_error(what), status_(status) {}
    int status() const { return status_; }

private:
    int status_ = 0;
};

/// Unusable model completion (e.g. empty).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Optimization produced non-finite parameters. Carries the update index.
class TrainingError : public std::runtime_error {
public:
    TrainingError(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_ = 0;
};

}  // namespace taxograft
