#pragma once

#include <stdexcept>

namespace evaudit {

// Bad inputs supplied by the caller: empty gold answers, unreadable
// fixture files, malformed records.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace evaudit
