#pragma once

#include <stdexcept>
#include <string>

namespace fracgreen {

// Anything thrown by this library derives from Error, so callers can catch
// one type at the boundary and still tell failure classes apart below it.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad parameters: outside the supported envelope, invalid grids, etc.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A series or iteration hit its cap before reaching the requested tolerance.
struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

// The two-term relaxation series produced growing terms.
struct SeriesDivergence : Error {
    explicit SeriesDivergence(const std::string& msg) : Error(msg) {}
};

// Adaptive quadrature stalled before reaching the requested tolerance.
struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& msg) : Error(msg) {}
};

// Asked for the real symbol of an operator with a nonzero skew parameter.
struct ThetaNotZero : Error {
    explicit ThetaNotZero(const std::string& msg) : Error(msg) {}
};

// Sampled data does not decay at the grid edges; a periodized transform of
// it would wrap around and the result could not be trusted.
struct EdgeDecayViolation : Error {
    explicit EdgeDecayViolation(const std::string& msg) : Error(msg) {}
};

// A synthesized field that must be real carries too much imaginary residue.
struct RealnessViolation : Error {
    explicit RealnessViolation(const std::string& msg) : Error(msg) {}
};

// Explicit time stepping outside its stability envelope, or NaN mid-march.
struct StabilityViolation : Error {
    explicit StabilityViolation(const std::string& msg) : Error(msg) {}
};

// Malformed run configuration (missing keys, wrong types, bad mode).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace fracgreen
