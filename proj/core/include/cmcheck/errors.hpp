#ifndef CMCHECK_ERRORS_HPP
#define CMCHECK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cmcheck {

/// Malformed or contract-violating user input (CLI maps this to exit code 2).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Request exceeds a documented size limit (e.g. subgroup closure for large ell).
struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Working precision was insufficient to certify a rounded result.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration that cannot be satisfied (empty sampling interval, exhausted retries).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cmcheck

#endif
