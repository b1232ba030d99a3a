#pragma once

#include <stdexcept>
#include <string>

namespace affpr {

/// Invalid input: wrong index set, bad dimensions, inadmissible generator.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical check failed (tolerance exceeded, inconsistent data).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace affpr
