// SPDX-License-Identifier: MIT
/**
 * @file reductions_rnz.hpp
 * @brief Invariant solution families of the RAPM equation for r != 0
 *
 * Notation: tau = tan(phi), c = cos(phi), eps = +-1.
 *
 *  - H2: u = (k^3/r) S ln S - (k^3 - tau) t S + c1 S + c2 e^(rt), with k a
 *    real root of k^3 (1 - mu r^(-1/3) k) + 2 r tau / sigma^2 = 0.
 *  - H3: u = S w(z) + zeta S ln S, z = S e^(-(r+gamma) t),
 *    gamma = 1/(1 + a c), zeta = a sin(phi) / (r (1 + a c) - 1); w is given
 *    parametrically (see parametric.hpp).
 *  - H4: z = S e^(-rt) and k(z) a root of
 *    k^3 (1 - mu k) + 2 tau/sigma^2 + 2 eps/(z sigma^2 c) = 0.
 */

#pragma once

#include <optional>
#include <vector>

#include "rapm/curve.hpp"
#include "rapm/model.hpp"
#include "rapm/parametric.hpp"
#include "rapm/quadrature.hpp"
#include "rapm/quartic.hpp"
#include "rapm/surface.hpp"

namespace rapm {

/// tan(phi) for phi in [0, pi]; throws ValidationError at pi/2 or outside the range.
[[nodiscard]] double tau_of_phi(double phi);

// ---------------------------------------------------------------- H2

struct H2Family {
    ModelParams params;
    double phi = 0.0;
    double tau = 0.0;
    int branch = 0;
    double k = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    /// Quartic whose root is k: mu_eff = mu cbrt(1/r), d = 2 r tau / sigma^2.
    [[nodiscard]] RapmQuartic quartic() const;
};

[[nodiscard]] H2Family h2_build(const ModelParams& p, double phi, int branch, double c1, double c2);
[[nodiscard]] double h2_eval(const H2Family& f, double S, double t);
[[nodiscard]] SurfaceJet h2_jet(const H2Family& f, double S, double t);
[[nodiscard]] SurfaceFn h2_surface(const H2Family& f, const Support& support);

// ---------------------------------------------------------------- H3

struct H3Family {
    ModelParams params;
    double a = 0.0;
    double phi = 0.0;
    double gamma = 0.0;
    double zeta = 0.0;
    int branch = 0;
    double theta0 = 0.0;
    double z0 = 1.0;
    CurveBuild build;
    CurveInterpolant interpolant;
    ParametricEvaluator evaluator;

    [[nodiscard]] double kappa() const noexcept { return params.r() + gamma; }
    [[nodiscard]] const ParametricCurve& curve() const noexcept { return build.curve; }
};

[[nodiscard]] H3Family h3_build(const ModelParams& p, double a, double phi, int branch, double theta_begin,
                                double theta_end, double theta0, double z0, const CurveBuildOptions& options = {});
/// Throws DomainError("z outside curve support") when S e^(-(r+gamma)t) leaves the curve.
[[nodiscard]] double h3_eval(const H3Family& f, double S, double t);
/// Surface on a rectangle whose image in z lies inside the curve.
[[nodiscard]] SurfaceFn h3_surface(const H3Family& f, const Support& support);

// ---------------------------------------------------------------- H4

enum class H4Variant {
    /// e^(rt) int int k^3/z + S (tau t + c1) + e^(rt) (eps t/c + c2).
    printed_solution,
    /// u = e^(rt) Y(z) + (tau/r + eps/(r c z)) S ln S + c1 S + c2 e^(rt), with
    /// z (z w)'' = k^3 - tau/r - eps/(r c z) as printed.
    invariant_printed_ode,
    /// Same invariant form with z (z w)'' = k^3 - tau/r + eps/(r c z).
    invariant_derived_ode,
};

struct H4Family {
    ModelParams params;
    double phi = 0.0;
    double tau = 0.0;
    int eps = 1;
    int branch = 0;
    double c1 = 0.0;
    double c2 = 0.0;
    double z_begin = 0.0;  ///< lower limit of both integrals
    double z_end = 0.0;
    H4Variant variant = H4Variant::printed_solution;
    QuadratureOptions quadrature{};

    [[nodiscard]] RapmQuartic quartic(double z) const;
    /// Tracked root at z; throws BranchTerminated when it does not exist.
    [[nodiscard]] double k(double z) const;
};

[[nodiscard]] H4Family h4_build(const ModelParams& p, double phi, int eps, int branch, double c1, double c2,
                                double z_begin, double z_end,
                                H4Variant variant = H4Variant::printed_solution);
[[nodiscard]] double h4_eval(const H4Family& f, double S, double t);
[[nodiscard]] SurfaceJet h4_jet(const H4Family& f, double S, double t);
[[nodiscard]] SurfaceFn h4_surface(const H4Family& f, const Support& support);

/// One-shot evaluation of the printed H4 solution.
[[nodiscard]] double h4_eval(const ModelParams& p, double phi, int eps, int branch, double c1, double c2, double S,
                             double t, double z_begin, double z_end);

}  // namespace rapm
