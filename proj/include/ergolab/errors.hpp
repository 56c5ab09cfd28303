#pragma once

#include <stdexcept>
#include <string>

namespace ergolab {

// Bad configuration or arguments supplied by the caller (CLI exit code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArgumentError : ConfigError {
    using ConfigError::ConfigError;
};

struct UnsupportedError : ConfigError {
    using ConfigError::ConfigError;
};

// A mathematical invariant failed at runtime (CLI exit code 2).
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_arg(bool cond, const std::string& msg) {
    if (!cond) throw ArgumentError(msg);
}

inline void require_invariant(bool cond, const std::string& msg) {
    if (!cond) throw InvariantError(msg);
}

}  // namespace ergolab
