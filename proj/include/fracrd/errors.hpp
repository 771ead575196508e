#pragma once

#include <stdexcept>
#include <string>

namespace fracrd {

/// Argument sits on a pole of the function being evaluated.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// No available representation reached the requested accuracy.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter record or call arguments violate their documented invariants.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation requested for a regime it is not defined for.
struct RegimeMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

/// Time integration produced non-finite values.
struct SchemeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fracrd
