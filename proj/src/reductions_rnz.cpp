// SPDX-License-Identifier: MIT
#include "rapm/reductions_rnz.hpp"

#include <cmath>
#include <string>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"

namespace rapm {

double tau_of_phi(double phi) {
    if (!(phi >= 0.0 && phi <= kPi)) throw ValidationError("phi must lie in [0, pi]");
    if (std::abs(std::cos(phi)) < 1e-12) throw ValidationError("phi at removable singularity pi/2");
    return std::tan(phi);
}

namespace {

void require_nonzero_rate(const ModelParams& p) {
    if (p.r() == 0.0) throw ValidationError("rate r must be nonzero for this family (use the r = 0 family)");
}

void check_corners_in(const Support& s, double kappa, double lo, double hi, const char* what) {
    for (double S : {s.S_min, s.S_max}) {
        for (double t : {s.t_min, s.t_max}) {
            const double z = S * std::exp(-kappa * t);
            if (!(z >= lo && z <= hi)) {
                throw DomainError(std::string(what) + ": support maps outside z range [" + std::to_string(lo) +
                                  ", " + std::to_string(hi) + "] at (S=" + std::to_string(S) +
                                  ", t=" + std::to_string(t) + ")");
            }
        }
    }
}

}  // namespace

// ---------------------------------------------------------------- H2

RapmQuartic H2Family::quartic() const {
    return {params.mu() * signed_cbrt(1.0 / params.r()), 2.0 * params.r() * tau / params.sigma2()};
}

H2Family h2_build(const ModelParams& p, double phi, int branch, double c1, double c2) {
    require_nonzero_rate(p);
    H2Family f{p, phi, tau_of_phi(phi), branch, 0.0, c1, c2};
    const auto root = root_on_branch(f.quartic(), branch);
    if (!root) throw ValidationError("no real root for this branch index");
    f.k = root->value;
    return f;
}

double h2_eval(const H2Family& f, double S, double t) {
    const double r = f.params.r();
    const double k3 = f.k * f.k * f.k;
    return (k3 / r) * S * std::log(S) - (k3 - f.tau) * t * S + f.c1 * S + f.c2 * std::exp(r * t);
}

SurfaceJet h2_jet(const H2Family& f, double S, double t) {
    const double r = f.params.r();
    const double k3 = f.k * f.k * f.k;
    const double ert = std::exp(r * t);
    return {h2_eval(f, S, t), -(k3 - f.tau) * S + r * f.c2 * ert,
            (k3 / r) * (std::log(S) + 1.0) - (k3 - f.tau) * t + f.c1, k3 / (r * S)};
}

SurfaceFn h2_surface(const H2Family& f, const Support& support) {
    return {[f](double S, double t) { return h2_eval(f, S, t); }, support,
            [f](double S, double t) { return h2_jet(f, S, t); }};
}

// ---------------------------------------------------------------- H3

H3Family h3_build(const ModelParams& p, double a, double phi, int branch, double theta_begin, double theta_end,
                  double theta0, double z0, const CurveBuildOptions& options) {
    require_nonzero_rate(p);
    if (!(phi >= 0.0 && phi <= kPi)) throw ValidationError("phi must lie in [0, pi]");
    const double one_ac = 1.0 + a * std::cos(phi);
    if (std::abs(one_ac) < 1e-14) throw ValidationError("1 + a cos(phi) = 0: gamma is infinite");
    const double zden = p.r() * one_ac - 1.0;
    if (std::abs(zden) < 1e-14) throw ValidationError("r (1 + a cos(phi)) = 1: zeta is infinite");
    const double gamma = 1.0 / one_ac;
    const double zeta = a * std::sin(phi) / zden;
    const ParametricReduction red{zeta, p.r() + gamma, p.r()};
    CurveBuild build = build_parametric_curve(p, red, branch, theta_begin, theta_end, theta0, z0, options);
    CurveInterpolant interp(build.curve);
    ParametricEvaluator ev(p, red, branch, build, options.quadrature);
    return {p, a, phi, gamma, zeta, branch, theta0, z0, std::move(build), std::move(interp), std::move(ev)};
}

double h3_eval(const H3Family& f, double S, double t) {
    if (!(S > 0.0)) throw ValidationError("S must be positive");
    const double z = S * std::exp(-f.kappa() * t);
    if (!f.evaluator.contains(z)) throw DomainError("z outside curve support");
    return S * f.evaluator.at(z).w + f.zeta * S * std::log(S);
}

SurfaceFn h3_surface(const H3Family& f, const Support& support) {
    const auto [lo, hi] = f.interpolant.z_range();
    check_corners_in(support, f.kappa(), lo, hi, "h3_surface");
    return {[f](double S, double t) { return h3_eval(f, S, t); }, support,
            [f](double S, double t) { return parametric_jet(f.evaluator, S, t); }};
}

// ---------------------------------------------------------------- H4

RapmQuartic H4Family::quartic(double z) const {
    const double s2 = params.sigma2();
    return {params.mu(), 2.0 * tau / s2 + 2.0 * eps / (z * s2 * std::cos(phi))};
}

double H4Family::k(double z) const {
    const auto root = root_on_branch(quartic(z), branch);
    if (!root) throw BranchTerminated("branch terminated at z=" + std::to_string(z), z);
    return root->value;
}

H4Family h4_build(const ModelParams& p, double phi, int eps, int branch, double c1, double c2, double z_begin,
                  double z_end, H4Variant variant) {
    require_nonzero_rate(p);
    if (eps != 1 && eps != -1) throw ValidationError("eps must be +1 or -1");
    if (!(z_begin > 0.0)) throw ValidationError("quadrature range must exclude z = 0");
    if (!(z_end > z_begin)) throw ValidationError("quadrature range must be increasing");
    H4Family f{p, phi, tau_of_phi(phi), eps, branch, c1, c2, z_begin, z_end, variant, {}};
    const auto seed = root_on_branch(f.quartic(z_begin), branch);
    if (!seed) throw ValidationError("no real root for this branch index");
    (void)track_root([&](double z) { return f.quartic(z); }, z_begin, z_end, seed->value);
    return f;
}

namespace {

struct H4Integrals {
    double F;   // int_{z_a}^{z} f
    double Y;   // int_{z_a}^{z} (z - x) f(x) dx
    double f;   // integrand at z
};

H4Integrals h4_integrals(const H4Family& fam, double z) {
    const double r = fam.params.r();
    const double c = std::cos(fam.phi);
    const double sgn = fam.variant == H4Variant::invariant_derived_ode ? 1.0 : -1.0;
    const auto integrand = [&](double x) {
        const double k = fam.k(x);
        double v = k * k * k / x;
        if (fam.variant != H4Variant::printed_solution) v += -fam.tau / (r * x) + sgn * fam.eps / (r * c * x * x);
        return v;
    };
    return {integrate(integrand, fam.z_begin, z, fam.quadrature).value,
            repeated_integral(integrand, fam.z_begin, z, fam.quadrature).value, integrand(z)};
}

double h4_z(const H4Family& f, double S, double t) {
    if (!(S > 0.0)) throw ValidationError("S must be positive");
    const double z = S * std::exp(-f.params.r() * t);
    if (!(z >= f.z_begin && z <= f.z_end)) throw DomainError("z outside quadrature range");
    return z;
}

}  // namespace

SurfaceJet h4_jet(const H4Family& f, double S, double t) {
    const double z = h4_z(f, S, t);
    const double r = f.params.r();
    const double c = std::cos(f.phi);
    const double ert = std::exp(r * t);
    const auto I = h4_integrals(f, z);
    SurfaceJet j;
    if (f.variant == H4Variant::printed_solution) {
        const double k = f.k(z);
        j.u = ert * I.Y + S * (f.tau * t + f.c1) + ert * (f.eps * t / c + f.c2);
        j.u_S = I.F + f.tau * t + f.c1;
        j.u_SS = k * k * k / S;
        j.u_t = r * ert * I.Y - r * ert * z * I.F + S * f.tau + r * ert * (f.eps * t / c + f.c2) + ert * f.eps / c;
        return j;
    }
    const double g = f.tau / r + f.eps / (r * c * z);
    const double g1 = -f.eps / (r * c * z * z);
    const double g2 = 2.0 * f.eps / (r * c * z * z * z);
    const double L = std::log(S);
    j.u = ert * I.Y + g * S * L + f.c1 * S + f.c2 * ert;
    j.u_S = I.F + g1 * z * L + g * (L + 1.0) + f.c1;
    j.u_SS = (z / S) * (I.f + (g2 * z + 2.0 * g1) * L + g1) + (g1 * z + g) / S;
    j.u_t = r * ert * (I.Y - z * I.F) - r * z * g1 * S * L + r * f.c2 * ert;
    return j;
}

double h4_eval(const H4Family& f, double S, double t) {
    const double z = h4_z(f, S, t);
    const double r = f.params.r();
    const double c = std::cos(f.phi);
    const double ert = std::exp(r * t);
    const auto integrand_Y = [&] { return h4_integrals(f, z).Y; };
    if (f.variant == H4Variant::printed_solution) {
        return ert * integrand_Y() + S * (f.tau * t + f.c1) + ert * (f.eps * t / c + f.c2);
    }
    const double g = f.tau / r + f.eps / (r * c * z);
    return ert * integrand_Y() + g * S * std::log(S) + f.c1 * S + f.c2 * ert;
}

SurfaceFn h4_surface(const H4Family& f, const Support& support) {
    check_corners_in(support, f.params.r(), f.z_begin, f.z_end, "h4_surface");
    return {[f](double S, double t) { return h4_eval(f, S, t); }, support,
            [f](double S, double t) { return h4_jet(f, S, t); }};
}

double h4_eval(const ModelParams& p, double phi, int eps, int branch, double c1, double c2, double S, double t,
               double z_begin, double z_end) {
    return h4_eval(h4_build(p, phi, eps, branch, c1, c2, z_begin, z_end), S, t);
}

}  // namespace rapm
