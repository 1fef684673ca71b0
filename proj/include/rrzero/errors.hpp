#pragma once

#include <stdexcept>
#include <string>

namespace rrzero {

// Input that is well-formed C++-side but outside what the tool supports
// (unrealized extensions, oversized duals without sampling opt-in, ...).
// The CLI maps this to exit code 2.
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed user input: schema violations, inconsistent declared tags,
// mixed-group operands coming from a description file. Exit code 2 as well.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rrzero
