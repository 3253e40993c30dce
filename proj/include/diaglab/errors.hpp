#ifndef DIAGLAB_ERRORS_HPP
#define DIAGLAB_ERRORS_HPP

#include <stdexcept>

namespace diaglab {

// Raised when a computation would exceed a configured budget (memory or
// coefficient operations). Maps to CLI exit code 2.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when input text or a fixture cannot be parsed.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace diaglab

#endif
