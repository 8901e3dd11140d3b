#pragma once

#include <stdexcept>
#include <string>

namespace landsea {

// Bad user input: malformed files, mismatched ids, invalid configuration.
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric trouble that is not the user's fault (e.g. an all-constant design).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace landsea
