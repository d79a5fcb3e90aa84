// SPDX-License-Identifier: MIT
/**
 * @file quadrature.hpp
 * @brief Adaptive Gauss-Kronrod quadrature and repeated integrals
 */

#pragma once

#include <functional>

namespace rapm {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    unsigned max_depth = 15;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  ///< Kronrod error estimate
};

/// Integral of f over [a, b] (a > b allowed, giving the negated integral).
/// Throws NumericalError if the requested tolerance is not met.
[[nodiscard]] QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                                         const QuadratureOptions& options = {});

/**
 * Twice-repeated integral with both lower limits at `a`:
 *   int_a^z ( int_a^y f(x) dx ) dy = int_a^z (z - x) f(x) dx.
 */
[[nodiscard]] QuadratureResult repeated_integral(const std::function<double(double)>& f, double a,
                                                 double z, const QuadratureOptions& options = {});

}  // namespace rapm
