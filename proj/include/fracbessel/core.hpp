#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracbessel {

// A computed value together with an estimate of its absolute error.
struct EvalResult {
    double value = 0.0;
    double abs_error = 0.0;

    double rel_error() const
    {
        return value == 0.0 ? abs_error : abs_error / std::fabs(value);
    }
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain, including poles of Gamma.
class DomainError : public Error {
public:
    using Error::Error;
};

// A series, quadrature or extrapolation did not reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Malformed user configuration: grids, condition lists, flags.
class ConfigError : public Error {
public:
    using Error::Error;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = 0.5772156649015329;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && x == std::floor(x);
}

inline bool near_integer(double x, double tol)
{
    return std::fabs(x - std::round(x)) <= tol;
}

} // namespace fracbessel
