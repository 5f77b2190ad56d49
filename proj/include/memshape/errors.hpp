#pragma once

#include <stdexcept>
#include <string>

namespace memshape {

// Violation of a documented precondition or invariant (bad input, inadmissible
// data, out-of-domain parameters). Maps to CLI exit code 2.
class invariant_error : public std::runtime_error {
public:
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: non-convergence, exhausted error budget, degenerate
// linear system. Maps to CLI exit code 3.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace memshape
