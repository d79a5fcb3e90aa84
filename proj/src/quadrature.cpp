// SPDX-License-Identifier: MIT
#include "rapm/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rapm/error.hpp"

namespace rapm {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
    if (a == b) return {};
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw ValidationError("integrate: limits must be finite");
    }
    double error = 0.0;
    double l1 = 0.0;
    // Boost reports per-panel errors in the panel's own [-1, 1] units; mapping the range to
    // [-1, 1] keeps the summed estimate a bound in the caller's units.
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        [&](double x) { return half * f(mid + half * x); }, -1.0, 1.0, options.max_depth, options.rel_tol, &error,
        &l1);
    if (!std::isfinite(value)) throw NumericalError("integrate: non-finite integral");
    const double allowed = std::max(options.abs_tol, options.rel_tol * std::max(std::abs(value), l1));
    if (error > allowed) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "integrate: tolerance not met on [%.17g, %.17g], error estimate %.3g", a, b,
                      error);
        throw NumericalError(msg);
    }
    return {value, error};
}

QuadratureResult repeated_integral(const std::function<double(double)>& f, double a, double z,
                                   const QuadratureOptions& options) {
    return integrate([&](double x) { return (z - x) * f(x); }, a, z, options);
}

}  // namespace rapm
