#pragma once

#include <stdexcept>
#include <string>

namespace mathworld {

// Bad input data: malformed files, schema violations, broken invariants.
// The CLI maps this family to exit code 1; anything else is exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strict-mode logical form syntax errors. Carries a character offset into
// the input text.
struct ParseError : ValidationError {
    ParseError(const std::string& msg, std::size_t position)
        : ValidationError(msg + " (at offset " + std::to_string(position) + ")"),
          offset(position) {}
    std::size_t offset;
};

// A state delta that cannot be expressed as a logical form.
struct ConversionError : ValidationError {
    using ValidationError::ValidationError;
};

// Division by zero or 64-bit overflow while solving.
struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mathworld
