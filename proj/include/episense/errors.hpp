#ifndef EPISENSE_ERRORS_HPP
#define EPISENSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace episense {

/// Problem with input data (malformed file, gap, duplicate, range violation).
/// CLI maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Problem with configuration (bad flag value, impossible window).
/// CLI maps these to exit code 3.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace episense

#endif
