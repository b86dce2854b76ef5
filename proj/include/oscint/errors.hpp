#pragma once

#include <stdexcept>
#include <string>

namespace oscint {

/// Error taxonomy shared by the library and the CLI.
///
/// The CLI maps these onto its exit codes: parse_error -> 2,
/// validation_error (and subclasses) -> 3, numeric_error -> 4.

/// A file could not be parsed. Carries the offending file and line.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string file, long line, const std::string& message)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + message),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const { return file_; }
    long line() const { return line_; }

private:
    std::string file_;
    long line_;
};

/// An input violates a documented invariant (shape mismatch, out-of-range
/// index, failed general-position check, ...). The message names the
/// invariant that failed.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument to an operation (dimension mismatch and the like).
class argument_error : public validation_error {
public:
    using validation_error::validation_error;
};

/// A numeric procedure could not finish within its resources
/// (panel budget, grid resolution). May carry a partial result.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace oscint
