#pragma once

#include <stdexcept>
#include <string>

namespace cycloek {

// Numerical result failed a hard sanity threshold (silent precision loss
// upgraded to an error).
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request exceeds a configured size/iteration bound.
struct refusal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cycloek
