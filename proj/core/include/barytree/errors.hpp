#pragma once

#include <stdexcept>
#include <string>

namespace barytree {

// Error taxonomy shared by the library and the CLI exit codes:
// config errors map to exit 1, numeric/search failures to exit 2.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateInputError : std::runtime_error {
    explicit DegenerateInputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NearDegenerateMapError : std::runtime_error {
    explicit NearDegenerateMapError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    double residual = 0.0;
    explicit NumericError(const std::string& msg, double res = 0.0)
        : std::runtime_error(msg), residual(res) {}
};

struct ConcentrationError : NumericError {
    explicit ConcentrationError(const std::string& msg, double cond = 0.0)
        : NumericError(msg, cond) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SearchFailureError : std::runtime_error {
    explicit SearchFailureError(const std::string& msg) : std::runtime_error(msg) {}
};

struct StructureError : std::runtime_error {
    explicit StructureError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InternalConsistencyError : std::logic_error {
    explicit InternalConsistencyError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace barytree
