#pragma once

#include <stdexcept>
#include <string>

namespace hemo {

// Raised when a configuration document is structurally or semantically
// invalid. The message carries the JSON-pointer-ish path of the offending
// entry so the CLI can print actionable diagnostics (exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a solver step fails (positivity loss, nonlinear solve that does
// not converge, stability bound violated). The message carries edge/cell/time
// context (exit code 3 in the CLI).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hemo
