// SPDX-License-Identifier: MIT
#include "rapm/reductions_r0.hpp"

#include <cmath>
#include <string>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"
#include "rapm/reductions_rnz.hpp"

namespace rapm {

namespace {

void require_zero_rate(const ModelParams& p) {
    if (p.r() != 0.0) throw ValidationError("r must be zero for this family");
}

}  // namespace

// ---------------------------------------------------------------- H2_0

H20Family h2_0_build(const ModelParams& p, double phi, int branch, double c1, double c2) {
    require_zero_rate(p);
    H20Family f{p, phi, tau_of_phi(phi), branch, 0.0, c1, c2};
    const auto root = root_on_branch(f.quartic(), branch);
    if (!root) throw ValidationError("no real root for branch");
    f.k = root->value;
    return f;
}

double h2_0_eval(const H20Family& f, double S, double t) {
    const double k3 = f.k * f.k * f.k;
    return k3 * S * (std::log(S) - 1.0) + f.tau * t * S + f.c1 * S + f.c2;
}

SurfaceJet h2_0_jet(const H20Family& f, double S, double t) {
    const double k3 = f.k * f.k * f.k;
    return {h2_0_eval(f, S, t), f.tau * S, k3 * std::log(S) + f.tau * t + f.c1, k3 / S};
}

SurfaceFn h2_0_surface(const H20Family& f, const Support& support) {
    return {[f](double S, double t) { return h2_0_eval(f, S, t); }, support,
            [f](double S, double t) { return h2_0_jet(f, S, t); }};
}

// ---------------------------------------------------------------- H3_0

H30Family h3_0_build(const ModelParams& p, double a, double phi, int branch, double theta_begin, double theta_end,
                     double theta0, double z0, const CurveBuildOptions& options) {
    require_zero_rate(p);
    if (a == 0.0) throw ValidationError("a must be nonzero");
    if (!(phi >= 0.0 && phi <= kPi)) throw ValidationError("phi must lie in [0, pi]");
    const double c = std::cos(phi);
    if (std::abs(c) < 1e-12) throw ValidationError("phi at removable singularity pi/2");
    const double delta = 1.0 / (a * c);
    const double zeta = a * std::sin(phi);
    const ParametricReduction red{zeta, -delta, 0.0};
    CurveBuild build = build_parametric_curve(p, red, branch, theta_begin, theta_end, theta0, z0, options);
    CurveInterpolant interp(build.curve);
    ParametricEvaluator ev(p, red, branch, build, options.quadrature);
    return {p, a, phi, delta, zeta, branch, theta0, z0, std::move(build), std::move(interp), std::move(ev)};
}

double h3_0_eval(const H30Family& f, double S, double t) {
    if (!(S > 0.0)) throw ValidationError("S must be positive");
    const double z = S * std::exp(f.delta * t);
    if (!f.evaluator.contains(z)) throw DomainError("z outside curve support");
    return S * f.evaluator.at(z).w + f.zeta * S * std::log(S);
}

SurfaceFn h3_0_surface(const H30Family& f, const Support& support) {
    const auto [lo, hi] = f.interpolant.z_range();
    for (double S : {support.S_min, support.S_max}) {
        for (double t : {support.t_min, support.t_max}) {
            const double z = S * std::exp(f.delta * t);
            if (!(z >= lo && z <= hi)) throw DomainError("h3_0_surface: support maps outside the curve's z range");
        }
    }
    return {[f](double S, double t) { return h3_0_eval(f, S, t); }, support,
            [f](double S, double t) { return parametric_jet(f.evaluator, S, t); }};
}

// ---------------------------------------------------------------- H4_0

RapmQuartic H40Family::quartic(double S) const {
    const double s2 = params.sigma2();
    return {params.mu(), 2.0 * tau / s2 + 2.0 * eps / (S * s2 * std::cos(phi))};
}

double H40Family::k(double S) const {
    const auto root = root_on_branch(quartic(S), branch);
    if (!root) throw BranchTerminated("branch terminated at S=" + std::to_string(S), S);
    return root->value;
}

H40Family h4_0_build(const ModelParams& p, double phi, int eps, int branch, double c1, double c2, double S_begin,
                     double S_end, H40Variant variant) {
    require_zero_rate(p);
    if (eps != 1 && eps != -1) throw ValidationError("eps must be +1 or -1");
    if (!(S_begin > 0.0)) throw ValidationError("range includes 0");
    if (!(S_end > S_begin)) throw ValidationError("quadrature range must be increasing");
    H40Family f{p, phi, tau_of_phi(phi), eps, branch, c1, c2, S_begin, S_end, variant, {}};
    const auto seed = root_on_branch(f.quartic(S_begin), branch);
    if (!seed) throw ValidationError("no real root for branch");
    (void)track_root([&](double S) { return f.quartic(S); }, S_begin, S_end, seed->value);
    return f;
}

namespace {

void check_in_range(const H40Family& f, double S) {
    if (!(S >= f.S_begin && S <= f.S_end)) throw DomainError("S outside quadrature range");
}

double eps_term(const H40Family& f, double t) {
    const double e = f.eps / std::cos(f.phi);
    return f.variant == H40Variant::invariant ? e * t : e;
}

}  // namespace

double h4_0_eval(const H40Family& f, double S, double t) {
    check_in_range(f, S);
    const auto integrand = [&](double x) {
        const double k = f.k(x);
        return k * k * k / x;
    };
    const double W = repeated_integral(integrand, f.S_begin, S, f.quadrature).value;
    return W + f.tau * t * S + eps_term(f, t) + f.c1 * S + f.c2;
}

SurfaceJet h4_0_jet(const H40Family& f, double S, double t) {
    check_in_range(f, S);
    const auto integrand = [&](double x) {
        const double k = f.k(x);
        return k * k * k / x;
    };
    const double J = integrate(integrand, f.S_begin, S, f.quadrature).value;
    const double k = f.k(S);
    const double u_t = f.tau * S + (f.variant == H40Variant::invariant ? f.eps / std::cos(f.phi) : 0.0);
    return {h4_0_eval(f, S, t), u_t, J + f.tau * t + f.c1, k * k * k / S};
}

SurfaceFn h4_0_surface(const H40Family& f, const Support& support) {
    if (support.S_min < f.S_begin || support.S_max > f.S_end) {
        throw DomainError("h4_0_surface: support leaves the quadrature range");
    }
    return {[f](double S, double t) { return h4_0_eval(f, S, t); }, support,
            [f](double S, double t) { return h4_0_jet(f, S, t); }};
}

double h4_0_eval(const ModelParams& p, double phi, int eps, int branch, double c1, double c2, double S, double t,
                 double S_begin, double S_end) {
    return h4_0_eval(h4_0_build(p, phi, eps, branch, c1, c2, S_begin, S_end), S, t);
}

}  // namespace rapm
