#pragma once

#include <stdexcept>
#include <string>

namespace pspec {

// Numerical failure (non-convergence, inconsistent cross-checks). Distinct
// from std::invalid_argument so callers can map it to its own exit code.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pspec
