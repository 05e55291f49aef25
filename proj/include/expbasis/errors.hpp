#pragma once

#include <stdexcept>
#include <string>

namespace expbasis {

/// Bad domain parameters, malformed spec strings, dimension mismatches.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured budget (grid cells, matrix size, sweep points, enumeration range)
/// would be exceeded.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver failed to converge. Carries the best values seen so far.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial_min, double partial_max)
        : std::runtime_error(what), partial_lambda_min(partial_min), partial_lambda_max(partial_max) {}
    double partial_lambda_min;
    double partial_lambda_max;
};

} // namespace expbasis
