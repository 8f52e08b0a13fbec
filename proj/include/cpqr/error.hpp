#pragma once

#include <stdexcept>
#include <string>

namespace cpqr {

/// Invalid user input: bad arguments, bad files, violated preconditions.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed material or config file, with the offending line.
class ParseError : public ConfigError {
public:
    ParseError(const std::string& file, int line, const std::string& what)
        : ConfigError(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// A computation that did not reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cpqr
