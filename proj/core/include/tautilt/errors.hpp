#pragma once

#include <stdexcept>
#include <string>

namespace tautilt {

// Exit-code contract used by the CLI: each error family maps to one code.
enum class ExitCode : int {
    Ok = 0,
    CheckFailed = 1,
    Usage = 2,
    Syntax = 3,
    InvalidQuiver = 4,
    OutsidePool = 5,
    Internal = 6,
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// DSL syntax error; carries the offending line number.
struct SyntaxError : std::runtime_error {
    int line;
    SyntaxError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Structural quiver error (cycles, duplicate ids, missing vertices).
struct QuiverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input falls outside the supported indecomposable pool (regular modules,
// wild quivers without a bounded preset, mutation past the explored region).
struct PoolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A theory-level contract failed: these indicate a bug, not bad input.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tautilt
