#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bohr {

/// Raised for malformed or inconsistent input: module mismatches, bad
/// ranges, non-normalized measures, missing moments. The CLI maps it to
/// exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Expression syntax errors carry a 1-based source position.
class ParseError : public InputError {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : InputError(message + " at line " + std::to_string(line) + ", column " +
                     std::to_string(column)),
          detail_(message), line_(line), column_(column) {}

    const std::string& detail() const noexcept { return detail_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace bohr
