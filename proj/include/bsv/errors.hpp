#pragma once

#include <stdexcept>

namespace bsv {

// Configuration file or CLI argument problem; CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric or convergence failure in a run; CLI exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace bsv
