#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pgc {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// base class for all errors thrown by the library
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// malformed input document
struct ParseError : Error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

// a mathematical precondition of an operation does not hold
struct HypothesisError : Error {
    using Error::Error;
};

// an exhaustive search would exceed the configured work budget
struct BudgetError : Error {
    u64 required;
    BudgetError(u64 required_, const std::string& msg) : Error(msg), required(required_) {}
};

// invalid parameters for a catalog entry or construction
struct ConstraintError : Error {
    using Error::Error;
};

} // namespace pgc
