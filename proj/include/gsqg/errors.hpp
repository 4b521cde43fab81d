#pragma once

#include <stdexcept>
#include <string>

namespace gsqg {

// Parameters outside a validity window / wrong regime. CLI exit code 1.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A numerical process failed to converge to tolerance. CLI exit code 2.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gsqg
