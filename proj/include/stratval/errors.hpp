#pragma once

#include <stdexcept>
#include <string>

namespace stratval {

// Invalid argument values (bad probabilities, negative counts, ...).
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input data; carries a 1-based line number when one is known.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg), line_(0) {}
    parse_error(const std::string& msg, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    // 0 when no line is associated
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Referenced record, agent, or file does not exist.
class not_found_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A record id was registered twice.
class conflict_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration would exceed the configured budget.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be read or written.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace stratval
