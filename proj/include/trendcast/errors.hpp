#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trendcast {

/// Malformed or unacceptable input data (CSV rows, scenario JSON, ...).
/// Carries the 1-based line number when one is known.
class ParseError final : public std::runtime_error {
public:
    explicit ParseError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The series is too short for the requested window, day lag, or horizon.
class InsufficientHistoryError final : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An index or window fell outside the defined range of a series.
class BoundsError final : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

} // namespace trendcast
