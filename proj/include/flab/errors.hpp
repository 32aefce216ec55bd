#pragma once

#include <stdexcept>
#include <string>

namespace flab {

// Error taxonomy mirrors the CLI exit-code contract:
//   invalid_input / parse_error -> 2, numeric_error -> 3, internal_error -> 4.

struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (e.g. a fixed-point iteration that did not converge).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A violated internal invariant; always a bug or corrupted state, never user input.
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require_input(bool cond, const std::string& msg) {
    if (!cond) throw invalid_input(msg);
}

inline void require_internal(bool cond, const std::string& msg) {
    if (!cond) throw internal_error(msg);
}

} // namespace flab
