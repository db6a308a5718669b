#pragma once

#include <stdexcept>
#include <string>

namespace latd {

// Matrix/system shape disagreement (wrong dimensions for the operation).
class shape_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operation requires a full-rank matrix and the input is rank-deficient.
class not_full_rank_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Exhaustive enumeration would exceed the configured budget.
class budget_exceeded_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A quasipolynomial produced a non-integral h-vector entry; this signals a
// bug upstream, never a property of valid input.
class non_integral_h_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Malformed textual input (matrix files, inline matrices, radii ranges).
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, int line = 0, int column = 0)
        : std::runtime_error(what), line(line), column(column) {}
    int line;
    int column;
};

} // namespace latd
