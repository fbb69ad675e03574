#pragma once

#include <stdexcept>
#include <string>

namespace pushpull {

// Out-of-range arguments use std::domain_error / std::invalid_argument.
// The two types below cover the remaining failure classes.

/// Raised when a request would need more memory than the configured cap.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a numerical routine leaves its domain of validity.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pushpull
