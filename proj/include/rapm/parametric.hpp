// SPDX-License-Identifier: MIT
/**
 * @file parametric.hpp
 * @brief Parametric curves for reductions u = S w(z) + zeta S ln S, z = S e^(-kappa t)
 *
 * With theta = z w_z the reduced equation is solved by a root k(theta) of
 *
 *   (sigma^2/2) k^3 (1 - mu k) + r zeta + (r - kappa) theta = 0
 *
 * together with z(zw)'' + zeta = k^3. Along the curve
 *
 *   d ln z / d theta = 1 / (k^3 - theta - zeta),
 *   d w    / d theta = theta / (k^3 - theta - zeta),
 *
 * and S u_SS = k^3. Both integrals are taken from an anchor (theta0, z0) with
 * w(theta0) = 0.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rapm/curve.hpp"
#include "rapm/model.hpp"
#include "rapm/quadrature.hpp"
#include "rapm/quartic.hpp"
#include "rapm/surface.hpp"

namespace rapm {

struct ParametricReduction {
    double zeta = 0.0;
    double kappa = 0.0;
    double r = 0.0;
};

struct CurveBuildOptions {
    std::size_t n_samples = 201;
    QuadratureOptions quadrature{};
    /// Distance kept from a located denominator zero.
    double singularity_margin = 1e-6;
};

struct CurveBuild {
    ParametricCurve curve;
    std::vector<double> k;  ///< root at each sample
    /// theta values where the range was cut at a zero of k^3 - theta - zeta.
    std::vector<double> truncated_at;
    double quadrature_error = 0.0;  ///< accumulated Kronrod estimate for ln z and w
};

/// The quartic in k at a given theta.
[[nodiscard]] RapmQuartic parametric_quartic(const ModelParams& p, const ParametricReduction& red, double theta);

/**
 * Build the curve on `branch` over [theta_begin, theta_end] (theta0 inside).
 * A zero of the denominator inside the range truncates the range on that side
 * at the zero minus the margin; the zero is reported in `truncated_at`.
 * Throws ValidationError("no real root for this branch index") when the branch
 * does not exist at theta_begin, ValidationError("denominator singularity") if
 * the anchor itself is singular, and propagates BranchTerminated.
 */
[[nodiscard]] CurveBuild build_parametric_curve(const ModelParams& p, const ParametricReduction& red, int branch,
                                                double theta_begin, double theta_end, double theta0, double z0,
                                                const CurveBuildOptions& options = {});

/**
 * Evaluation of a built curve at arbitrary z. The node nearest below z (in
 * ln z) anchors a safeguarded Newton solve of ln z(theta) = ln z, with both
 * integrals taken from that node, so values and derivatives carry quadrature
 * accuracy rather than interpolation error. At the solution
 * w_z = theta / z and w_zz = (k^3 - 2 theta - zeta) / z^2.
 */
class ParametricEvaluator {
public:
    ParametricEvaluator(const ModelParams& p, const ParametricReduction& red, int branch, const CurveBuild& build,
                        const QuadratureOptions& quadrature = {});

    struct Point {
        double theta = 0.0;
        double k = 0.0;
        double w = 0.0;
        double w_z = 0.0;
        double w_zz = 0.0;
    };

    [[nodiscard]] std::pair<double, double> z_range() const noexcept { return {z_min_, z_max_}; }
    [[nodiscard]] bool contains(double z) const noexcept { return z >= z_min_ && z <= z_max_; }
    /// Throws DomainError outside z_range().
    [[nodiscard]] Point at(double z) const;
    [[nodiscard]] const ParametricReduction& reduction() const noexcept { return red_; }

private:
    ModelParams params_;
    ParametricReduction red_;
    int branch_;
    std::vector<double> theta_, lnz_, w_;
    std::vector<double> singular_;
    QuadratureOptions quadrature_;
    double z_min_ = 0.0, z_max_ = 0.0;
    bool ascending_ = true;

    [[nodiscard]] double k_of(double theta) const;
    [[nodiscard]] double denom(double theta) const;
};

/// Jet of u = S w(z) + zeta S ln S, z = S e^(-kappa t).
[[nodiscard]] SurfaceJet parametric_jet(const ParametricEvaluator& ev, double S, double t);

}  // namespace rapm
