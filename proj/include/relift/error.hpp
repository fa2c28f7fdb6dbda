#pragma once

#include <stdexcept>
#include <string>

namespace relift {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text; `line` is 1-based.
struct parse_error : error {
    int line;
    parse_error(int line_, const std::string& what_)
        : error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Structurally invalid data: arity mismatch, undeclared vertex, signature
// mismatch, preconditions on arguments.
struct validation_error : error {
    using error::error;
};

// A configured resource budget (search nodes, size bound, wall clock) ran out
// before the answer was decided.  Deliberately a distinct type: callers must
// not coerce "ran out" into a yes/no answer.
struct budget_exhausted : error {
    using error::error;
};

// An executable consistency check that must hold by construction failed.
// Reaching this indicates a bug in the library, not bad input.
struct verification_error : error {
    using error::error;
};

} // namespace relift
