#pragma once

#include <stdexcept>
#include <string>

namespace photonsim {

// Matrix or vector dimensions do not fit together.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A parameter is outside its physical domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A configured size cap would be exceeded. Never silently truncated.
struct ResourceLimitError : std::length_error {
    using std::length_error::length_error;
};

// A numerical check failed (non-unitary input, PSD violation, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace photonsim
