#pragma once

#include <stdexcept>
#include <string>

namespace wb {

// Invalid arguments, parameter domains, or experiment configuration.
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Missing, malformed, or inconsistent data files. CLI exit code 3.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace wb
