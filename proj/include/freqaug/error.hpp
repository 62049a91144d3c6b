#pragma once

#include <stdexcept>
#include <string>

namespace freqaug {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arguments that violate an operation's preconditions (shapes, bounds, ranges).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Blending two samples that do not share a parent image.
class HomologyError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Bad run configuration or parameter ranges.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent dataset content.
class DataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// CLI exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitIo = 3;

}  // namespace freqaug
