#pragma once

#include <stdexcept>
#include <string>

namespace tvflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid model configuration, mismatched dimensions, malformed arguments.
struct ConfigError : Error {
    using Error::Error;
};

/// Unreadable/unwritable files, malformed file contents.
struct IoError : Error {
    using Error::Error;
};

/// Non-finite values detected during iteration.
struct DivergenceError : Error {
    DivergenceError(const std::string& msg, int iteration)
        : Error(msg), iteration(iteration) {}
    int iteration;
};

} // namespace tvflow
