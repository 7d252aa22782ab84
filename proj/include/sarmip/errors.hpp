#pragma once
#include <stdexcept>
#include <string>

namespace sarmip {

// Bad user input: malformed files, unknown ids, invariant-violating plans.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A solver solution that cannot be turned back into a mission plan.
struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown in the LP engine. Never a silent wrong answer.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sarmip
