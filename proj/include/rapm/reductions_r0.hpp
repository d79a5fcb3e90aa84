// SPDX-License-Identifier: MIT
/**
 * @file reductions_r0.hpp
 * @brief Invariant solution families of the RAPM equation for r = 0
 *
 *  - H2_0: u = k^3 S (ln S - 1) + tau t S + c1 S + c2, with
 *    k^3 (1 - mu k) + 2 tau / sigma^2 = 0.
 *  - H3_0: u = S w(z) + zeta S ln S, z = S e^(delta t), delta = 1/(a cos phi),
 *    zeta = a sin(phi); w parametric with root equation
 *    (sigma^2/2) k^3 (1 - mu k) + delta theta = 0.
 *  - H4_0: u = W(S) + tau t S + eps t / cos(phi) + c1 S + c2 with S W'' = k(S)^3,
 *    k^3 (1 - mu k) + 2 tau/sigma^2 + 2 eps/(S sigma^2 cos(phi)) = 0.
 */

#pragma once

#include "rapm/curve.hpp"
#include "rapm/model.hpp"
#include "rapm/parametric.hpp"
#include "rapm/quadrature.hpp"
#include "rapm/quartic.hpp"
#include "rapm/surface.hpp"

namespace rapm {

struct H20Family {
    ModelParams params;
    double phi = 0.0;
    double tau = 0.0;
    int branch = 0;
    double k = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    [[nodiscard]] RapmQuartic quartic() const { return {params.mu(), 2.0 * tau / params.sigma2()}; }
};

[[nodiscard]] H20Family h2_0_build(const ModelParams& p, double phi, int branch, double c1, double c2);
[[nodiscard]] double h2_0_eval(const H20Family& f, double S, double t);
[[nodiscard]] SurfaceJet h2_0_jet(const H20Family& f, double S, double t);
[[nodiscard]] SurfaceFn h2_0_surface(const H20Family& f, const Support& support);

struct H30Family {
    ModelParams params;
    double a = 0.0;
    double phi = 0.0;
    double delta = 0.0;
    double zeta = 0.0;
    int branch = 0;
    double theta0 = 0.0;
    double z0 = 1.0;
    CurveBuild build;
    CurveInterpolant interpolant;
    ParametricEvaluator evaluator;

    /// z = S e^(-kappa t) with kappa = -delta.
    [[nodiscard]] double kappa() const noexcept { return -delta; }
    [[nodiscard]] const ParametricCurve& curve() const noexcept { return build.curve; }
};

[[nodiscard]] H30Family h3_0_build(const ModelParams& p, double a, double phi, int branch, double theta_begin,
                                   double theta_end, double theta0, double z0,
                                   const CurveBuildOptions& options = {});
[[nodiscard]] double h3_0_eval(const H30Family& f, double S, double t);
[[nodiscard]] SurfaceFn h3_0_surface(const H30Family& f, const Support& support);

enum class H40Variant {
    /// eps t / cos(phi), consistent with the invariant w = u - tau t S - eps t / cos(phi).
    invariant,
    /// eps / cos(phi) without the factor t.
    printed_solution,
};

struct H40Family {
    ModelParams params;
    double phi = 0.0;
    double tau = 0.0;
    int eps = 1;
    int branch = 0;
    double c1 = 0.0;
    double c2 = 0.0;
    double S_begin = 0.0;  ///< lower limit of both integrals
    double S_end = 0.0;
    H40Variant variant = H40Variant::invariant;
    QuadratureOptions quadrature{};

    [[nodiscard]] RapmQuartic quartic(double S) const;
    [[nodiscard]] double k(double S) const;
};

[[nodiscard]] H40Family h4_0_build(const ModelParams& p, double phi, int eps, int branch, double c1, double c2,
                                   double S_begin, double S_end, H40Variant variant = H40Variant::invariant);
[[nodiscard]] double h4_0_eval(const H40Family& f, double S, double t);
[[nodiscard]] SurfaceJet h4_0_jet(const H40Family& f, double S, double t);
[[nodiscard]] SurfaceFn h4_0_surface(const H40Family& f, const Support& support);

/// One-shot evaluation of the invariant H4_0 solution.
[[nodiscard]] double h4_0_eval(const ModelParams& p, double phi, int eps, int branch, double c1, double c2,
                               double S, double t, double S_begin, double S_end);

}  // namespace rapm
