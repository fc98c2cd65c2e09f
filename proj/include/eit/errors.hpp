#pragma once

#include <stdexcept>
#include <string>

namespace eit {

// Error taxonomy for the solver pipeline. Everything derives from
// std::runtime_error so callers can catch broadly; the CLI maps these
// onto exit codes (config = 1, numerical = 2, validation = 3).

struct ZeroTotalDecay : std::runtime_error {
    explicit ZeroTotalDecay(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnstableOnly : std::runtime_error {
    explicit UnstableOnly(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonPhysicalState : std::runtime_error {
    explicit NonPhysicalState(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularResolvent : std::runtime_error {
    explicit SingularResolvent(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroOutputField : std::runtime_error {
    explicit ZeroOutputField(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnstableIntegration : std::runtime_error {
    explicit UnstableIntegration(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Wraps a failure at one point of a detuning scan with its grid index.
struct ScanError : std::runtime_error {
    int grid_index;
    ScanError(int index, const std::string& msg)
        : std::runtime_error("scan point " + std::to_string(index) + ": " + msg),
          grid_index(index) {}
};

}  // namespace eit
