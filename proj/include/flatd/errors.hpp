#pragma once

#include <stdexcept>
#include <string>

namespace flatd {

// Violated operation precondition (caller error, CLI exit 2).
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A holonomy-drop quotient whose refined lattice admits no diagonal basis;
// the quotient group exists but cannot be written in this matrix formalism.
struct nondiagonal_quotient_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input exceeds the packed-row or search limits (CLI exit 2).
struct resource_guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    int line, col;
    parse_error(int line_, int col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", col " +
                             std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

}  // namespace flatd
