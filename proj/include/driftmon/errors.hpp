#pragma once

#include <stdexcept>
#include <string>

namespace driftmon {

// Error taxonomy mirrors the CLI exit-code contract:
//   UsageError -> exit 1, DataError -> exit 2, anything else -> exit 3.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace driftmon
