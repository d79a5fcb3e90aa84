// SPDX-License-Identifier: MIT
/**
 * @file pde.hpp
 * @brief RAPM operator, residual verification and Black-Scholes reference values
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rapm/model.hpp"
#include "rapm/surface.hpp"

namespace rapm {

/**
 * u_t + (sigma^2/2) S^2 u_SS (1 - mu cbrt(S u_SS)) - r u + r S u_S, with
 * cbrt the odd real cube root so the operator is total in u_SS.
 */
[[nodiscard]] double rapm_operator(const ModelParams& p, double u, double u_t, double u_S,
                                   double u_SS, double S) noexcept;

[[nodiscard]] inline double rapm_operator(const ModelParams& p, const SurfaceJet& j, double S) noexcept {
    return rapm_operator(p, j.u, j.u_t, j.u_S, j.u_SS, S);
}

enum class Spacing { uniform, log };

struct GridSpec {
    double S_min = 1.0;
    double S_max = 2.0;
    double t_min = 0.0;
    double t_max = 1.0;
    std::size_t n_S = 3;
    std::size_t n_t = 3;
    Spacing spacing = Spacing::uniform;

    /// S_min > 0, S_max > S_min, t_max > t_min, n_S and n_t >= 3.
    void validate() const;
    [[nodiscard]] std::vector<double> S_nodes() const;
    [[nodiscard]] std::vector<double> t_nodes() const;
    [[nodiscard]] Support support() const { return {S_min, S_max, t_min, t_max}; }
};

struct ResidualPoint {
    double S = 0.0;
    double t = 0.0;
    double u = 0.0;
    double residual = 0.0;
    bool parabolic = true;
};

struct ResidualReport {
    double max_abs = 0.0;
    double max_abs_u = 0.0;        ///< max |u| over the grid, for relative tolerances
    std::size_t parabolicity_violations = 0;
    bool finite_differences = false;
    /// Estimated finite-difference error in the residual (from a 2h stencil), when available.
    std::optional<double> fd_error_estimate;
    std::vector<ResidualPoint> points;  ///< row-major in (t, S)
};

struct ResidualOptions {
    /// Finite-difference step as a fraction of the local grid spacing.
    double fd_step_fraction = 0.5;
    /// Use analytic jets when the surface provides them.
    bool prefer_jet = true;
    bool richardson = true;
};

/**
 * RAPM residual of `u` at every grid node, plus the count of nodes where
 * S u_SS >= (3/(4 mu))^3. Without a jet, derivatives come from 4th-order
 * centered differences, or 2nd-order one-sided ones where the centered
 * stencil leaves the support; throws ValidationError("support too small for
 * stencil") when neither fits.
 */
[[nodiscard]] ResidualReport residual_norm(const SurfaceFn& u, const ModelParams& p, const GridSpec& g,
                                           const ResidualOptions& options = {});

/// "S,t,u,residual" CSV.
[[nodiscard]] std::string to_csv(const ResidualReport& report);

/// European call value; tau = T - t.
[[nodiscard]] double bs_closed_form(double sigma, double r, double E, double tau, double S);
[[nodiscard]] double bs_put(double sigma, double r, double E, double tau, double S);
[[nodiscard]] double bs_call_delta(double sigma, double r, double E, double tau, double S);
[[nodiscard]] double bs_call_gamma(double sigma, double r, double E, double tau, double S);
[[nodiscard]] double bs_call_theta(double sigma, double r, double E, double tau, double S);

/// Call surface with maturity T and analytic jets, on S in [S_min, S_max], t in [t_min, t_max < T].
[[nodiscard]] SurfaceFn bs_call_surface(double sigma, double r, double E, double T, const Support& support);

struct ConvergenceOrder {
    double order = 0.0;  ///< mean of log2(e_h / e_{h/2}) over both ratios; 0 when exact
    bool exact = false;  ///< all errors at or below the exact threshold
};

/**
 * Observed order from errors at h, h/2, h/4. Throws NumericalError("non-monotone
 * errors") when a refinement does not reduce the error.
 */
[[nodiscard]] ConvergenceOrder convergence_order(std::span<const double> errors,
                                                 double exact_threshold = 1e-12);

}  // namespace rapm
