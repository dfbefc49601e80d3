// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace isac {

/// Malformed input: wrong shape, violated precondition, bad parameter range.
class StructuralError : public std::invalid_argument {
public:
    explicit StructuralError(const std::string& what) : std::invalid_argument(what) {}
};

/// A scenario violates one of the model constraints; the message names it.
class ConfigError : public StructuralError {
public:
    explicit ConfigError(const std::string& what) : StructuralError(what) {}
};

/// A numerical routine failed on otherwise well-formed input.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// A Monte Carlo estimate is too poor to support the requested computation.
class StatisticalError : public std::runtime_error {
public:
    explicit StatisticalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isac
