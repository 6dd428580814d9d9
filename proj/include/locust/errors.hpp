#pragma once

#include <stdexcept>
#include <string>

namespace locust {

// Error categories map 1:1 onto CLI exit codes (see tools/locustcast.cpp):
// ConfigError -> 2, DataError -> 3, DivergenceError -> 4.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace locust
