#pragma once

#include <stdexcept>
#include <string>

namespace pushrec {

/// Malformed input file. Carries the 1-based line number and the field
/// that failed, so CLI diagnostics can point at the offending cell.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, int line, std::string field, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": field '" + field +
                             "': " + what),
          file_(std::move(file)), line_(line), field_(std::move(field)) {}

    const std::string& file() const noexcept { return file_; }
    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::string file_;
    int line_;
    std::string field_;
};

/// Structurally valid input that violates a precondition (empty trial,
/// non-monotone abscissae, bad window length, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure: factorization breakdown, non-finite state during
/// integration, rank-deficient fit.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pushrec
