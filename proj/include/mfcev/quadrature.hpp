#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mfcev::quadrature {

struct Tolerance {
    double abs = 1e-12;
    double rel = 1e-9;
};

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

inline constexpr unsigned kMaxBisectionDepth = 30;
// Boost stops per subinterval, so the summed estimate can overshoot its target; aim lower.
inline constexpr double kInternalTargetFactor = 0.1;

/// Adaptive 15-point Gauss-Kronrod on [a, b].
/// Converged when the error estimate is within max(abs, rel * |value|).
template <class F>
IntegrationResult integrate(F&& f, double a, double b, Tolerance tol = {}) {
    IntegrationResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    double error = 0.0;
    double l1 = 0.0;
    out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, kMaxBisectionDepth, kInternalTargetFactor * tol.rel, &error, &l1);
    out.error_estimate = error;
    out.converged = std::isfinite(out.value) && error <= std::max(tol.abs, tol.rel * std::abs(out.value));
    return out;
}

}  // namespace mfcev::quadrature
