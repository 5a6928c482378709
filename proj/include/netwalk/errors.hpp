#pragma once

#include <stdexcept>
#include <string>

namespace netwalk {

// Error categories map onto CLI exit codes: usage -> 1, generation -> 2, numeric -> 3.

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : UsageError {
    ParseError(const std::string& msg, std::size_t line)
        : UsageError(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    std::size_t line_number;
};

struct GenerationError : std::runtime_error {
    explicit GenerationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace netwalk
