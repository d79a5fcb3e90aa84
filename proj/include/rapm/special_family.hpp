// SPDX-License-Identifier: MIT
/**
 * @file special_family.hpp
 * @brief Invariant solutions for the subalgebra <e1 + alpha e2>, r != 0, 1
 *
 * Invariants z = S e^(-(r-1)t) and w = u e^(-(r-1)t) - alpha e^t give the
 * reduced equation (s = sigma^2/2)
 *
 *   -w + z w_z + s z^2 w_zz (1 - mu (z w_zz)^(1/3)) = 0,
 *
 * which does not involve alpha. With v = z w_z - w it becomes first order,
 * v_z - mu v_z^(4/3) + v/(s z) = 0, solved parametrically by theta = v_z:
 *
 *   z(theta) = c1 L^(-(1 + 3 g)) theta^(-s g),   L = 1 + s (1 - mu q),
 *   v(theta) = -s z (theta - mu theta^(4/3)),   q = theta^(1/3), g = 1/(1+s),
 *   w(theta) = z (c2 + h(theta)),
 *
 *   h = -mu s q^4 + (s - 4/3) q^3 - (1/(2 mu) + 2/(mu s)) q^2
 *       - (1 + 5/s + 4/s^2) q / mu^2 - (1+s)^2 (s+4) / (mu^3 s^3) ln(L / (1+s)).
 *
 * h is normalized so that h(0) = 0; any other constant is absorbed in c2.
 *
 * Along the curve S u_SS = theta e^((r-1)t) z / S = theta, and z(theta) is
 * monotone while 4 mu q < 3, i.e. on the parabolic side.
 *
 * SpecialVariant::printed keeps an alternative closed form,
 * z = c1 L'^(1 + 3 g') theta^(-s g') with L' = 1 - s (1 - mu q), g' = 1/(1-s),
 * and the corresponding polynomial-plus-logarithm g(theta); it does not
 * satisfy the reduced equations and is retained for comparison only.
 */

#pragma once

#include <cstddef>

#include "rapm/curve.hpp"
#include "rapm/model.hpp"
#include "rapm/surface.hpp"

namespace rapm {

enum class SpecialVariant { derived, printed };

struct SpecialCurveParams {
    double c1 = 1.0;
    double c2 = 0.0;
    double theta_begin = 0.1;
    double theta_end = 1.0;
    std::size_t n_samples = 201;
    SpecialVariant variant = SpecialVariant::derived;
};

/// Closed-form point on the curve.
struct SpecialPoint {
    double z = 0.0;
    double v = 0.0;
    double w = 0.0;
    double w_z = 0.0;
};

/**
 * Evaluate the closed form at theta > 0. Throws ValidationError("logarithm
 * domain violated") when L <= 0 and ValidationError("gamma singular
 * (sigma^2 = 2)") for the printed variant at sigma^2 = 2.
 */
[[nodiscard]] SpecialPoint special_point(const ModelParams& p, double theta, double c1, double c2,
                                         SpecialVariant variant = SpecialVariant::derived);

/// Sampled curve with exact node slopes w_z.
[[nodiscard]] ParametricCurve special_build(const ModelParams& p, const SpecialCurveParams& c);
[[nodiscard]] ParametricCurve special_build(const ModelParams& p, double c1, double theta_begin, double theta_end);

/// theta at which z(theta) turns, (3/(4 mu))^3; infinite for mu = 0.
[[nodiscard]] double special_turning_theta(const ModelParams& p);

/**
 * u = (w(z) + alpha e^t) e^((r-1)t), z = S e^(-(r-1)t), with w interpolated
 * on the first monotone segment. Throws ValidationError("r equals 1") and
 * DomainError("z outside curve support").
 */
[[nodiscard]] double special_eval(const CurveInterpolant& curve, double alpha, double r, double S, double t);
[[nodiscard]] double special_eval(const ParametricCurve& curve, double alpha, double r, double S, double t);

struct SpecialFamily {
    ModelParams params;
    SpecialCurveParams curve_params;
    double alpha = 0.0;
    ParametricCurve curve;
    CurveInterpolant interpolant;
};

struct SpecialJetPoint {
    double theta = 0.0;
    double w = 0.0;
    double w_z = 0.0;
    double w_zz = 0.0;
};

/**
 * w and its z-derivatives at z. The derived variant inverts z(theta) on the
 * first monotone segment and uses w_zz = theta / z; the printed variant,
 * having no such identity, uses the interpolant.
 */
[[nodiscard]] SpecialJetPoint special_at(const SpecialFamily& f, double z);

[[nodiscard]] SpecialFamily special_family_build(const ModelParams& p, const SpecialCurveParams& c, double alpha);
[[nodiscard]] SurfaceFn special_surface(const SpecialFamily& f, const Support& support);
/// Largest S-rectangle [S_lo, S_hi] x [t_min, t_max] whose image in z stays inside the curve, shrunk by `margin` in ln S.
[[nodiscard]] Support special_support(const SpecialFamily& f, double t_min, double t_max, double margin = 0.05);

struct SpecialOdeResiduals {
    double first_order = 0.0;    ///< max |v_z - mu v_z^(4/3) + v/(s z)|
    double second_order = 0.0;   ///< max |-w + z w_z + s z^2 w_zz (1 - mu cbrt(z w_zz))|
    double v_consistency = 0.0;  ///< max |v_closed - v_fd| / max |v_closed|
    std::size_t points = 0;
};

/**
 * Finite-difference check of a sampled curve against the reduced equations.
 * Both forms differentiate node values with five-point weights on the
 * (non-uniform) z nodes, so the residuals fall as h^4 under refinement.
 * Node values of v are taken from the closed form of `variant`.
 */
[[nodiscard]] SpecialOdeResiduals special_ode_residuals(const ModelParams& p, const ParametricCurve& curve, double c1,
                                                        SpecialVariant variant = SpecialVariant::derived);

}  // namespace rapm
