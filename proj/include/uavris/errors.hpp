#pragma once

#include <stdexcept>
#include <string>

namespace uavris {

// Malformed or unparseable input (config files, report files, CLI values).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structurally valid input that violates a documented invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures; message carries the offending path.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace uavris
