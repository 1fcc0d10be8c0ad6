#pragma once

#include <stdexcept>
#include <string>

namespace ddmag {

// Bad input value (non-finite angle, negative length, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A quantity that is undefined at the given input (polar azimuth,
// zero reference angle, zero detuning envelope).
class DegenerateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Noise profile does not reach the end of the fiber.
class CoverageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error("config key '" + key + "': " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public std::runtime_error {
public:
    IoError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace ddmag
