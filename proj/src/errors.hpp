#pragma once

#include <stdexcept>
#include <string>

namespace stratprof {

// Raised when evaluation needs a concrete value for a parameter that was
// neither given a value nor (for symbolic checks) a declared bound.
struct ParamUnboundError : std::runtime_error {
    explicit ParamUnboundError(const std::string &param)
        : std::runtime_error("parameter '" + param + "' has no value"), param(param) {}
    std::string param;
};

// Raised when two instances being compared do not share an agent set.
struct AgentMismatchError : std::runtime_error {
    AgentMismatchError() : std::runtime_error("instances have different agent sets") {}
};

// Raised when an agent name is not part of the system's declared agent set.
struct AgentUnknownError : std::runtime_error {
    explicit AgentUnknownError(const std::string &agent)
        : std::runtime_error("unknown agent '" + agent + "'"), agent(agent) {}
    std::string agent;
};

// Raised by the deviation search when the depth bound is not positive.
struct InvalidBoundError : std::runtime_error {
    InvalidBoundError() : std::runtime_error("depth bound must be at least 1") {}
};

// Raised when two finite profiles that should share a game tree do not.
struct ShapeMismatchError : std::runtime_error {
    ShapeMismatchError() : std::runtime_error("profiles have different tree shapes") {}
};

}  // namespace stratprof
