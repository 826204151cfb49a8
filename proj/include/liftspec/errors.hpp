#pragma once

#include <stdexcept>
#include <string>

namespace liftspec {

/// Malformed input text or documents (cycle strings, instance files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally inconsistent input: a subset that is not a subgroup, a
/// voltage outside the group, a disconnected base where one is required.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical step failed its own residual, rank or convergence check.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace liftspec
