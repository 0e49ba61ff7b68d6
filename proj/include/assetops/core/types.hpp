#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace assetops {

using Json = nlohmann::json;

/// Milliseconds since the Unix epoch.
using Timestamp = std::int64_t;
using DurationMs = std::int64_t;

inline constexpr DurationMs kHourMs = 3'600'000;
inline constexpr DurationMs kDayMs = 24 * kHourMs;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value or argument violates a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed structured text. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace assetops
