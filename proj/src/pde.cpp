// SPDX-License-Identifier: MIT
#include "rapm/pde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"

namespace rapm {

double rapm_operator(const ModelParams& p, double u, double u_t, double u_S, double u_SS,
                     double S) noexcept {
    const double X = S * u_SS;
    return u_t + 0.5 * p.sigma2() * S * X * (1.0 - p.mu() * signed_cbrt(X)) - p.r() * u + p.r() * S * u_S;
}

void GridSpec::validate() const {
    if (!(S_min > 0.0)) throw ValidationError("GridSpec: S_min must be positive");
    if (!(S_max > S_min)) throw ValidationError("GridSpec: S_max must exceed S_min");
    if (!(t_max > t_min)) throw ValidationError("GridSpec: t_max must exceed t_min");
    if (n_S < 3 || n_t < 3) throw ValidationError("GridSpec: n_S and n_t must be at least 3");
    if (!std::isfinite(S_max) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
        throw ValidationError("GridSpec: bounds must be finite");
    }
}

std::vector<double> GridSpec::S_nodes() const {
    return spacing == Spacing::log ? geomspace(S_min, S_max, n_S) : linspace(S_min, S_max, n_S);
}

std::vector<double> GridSpec::t_nodes() const { return linspace(t_min, t_max, n_t); }

namespace {

struct Derivs {
    double u_S;
    double u_SS;
    double u_t;
};

// First and second derivative in one variable from samples of f around x0.
// Prefers the 4th-order centered stencil; falls back to 2nd-order one-sided.
// Returns false if no stencil fits in [lo, hi].
template <class F>
bool stencil_derivatives(const F& f, double x0, double h, double lo, double hi, double f0, double& d1,
                         double& d2) {
    if (x0 - 2.0 * h >= lo && x0 + 2.0 * h <= hi) {
        const double fm2 = f(x0 - 2.0 * h);
        const double fm1 = f(x0 - h);
        const double fp1 = f(x0 + h);
        const double fp2 = f(x0 + 2.0 * h);
        d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        return true;
    }
    double sgn = 0.0;
    if (x0 + 3.0 * h <= hi) sgn = 1.0;
    else if (x0 - 3.0 * h >= lo) sgn = -1.0;
    else return false;
    const double s = sgn * h;
    const double f1 = f(x0 + s);
    const double f2 = f(x0 + 2.0 * s);
    const double f3 = f(x0 + 3.0 * s);
    d1 = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * s);
    d2 = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
    return true;
}

bool fd_jet(const SurfaceFn& u, double S, double t, double hS, double ht, double u0, Derivs& out) {
    const Support& sp = u.support();
    double dS = 0.0, dSS = 0.0, dt = 0.0, dtt = 0.0;
    if (!stencil_derivatives([&](double x) { return u(x, t); }, S, hS, sp.S_min, sp.S_max, u0, dS, dSS)) {
        return false;
    }
    if (!stencil_derivatives([&](double y) { return u(S, y); }, t, ht, sp.t_min, sp.t_max, u0, dt, dtt)) {
        return false;
    }
    out = {dS, dSS, dt};
    return true;
}

}  // namespace

ResidualReport residual_norm(const SurfaceFn& u, const ModelParams& p, const GridSpec& g,
                             const ResidualOptions& options) {
    g.validate();
    const Support& sp = u.support();
    if (g.S_min < sp.S_min || g.S_max > sp.S_max || g.t_min < sp.t_min || g.t_max > sp.t_max) {
        throw DomainError("residual_norm: grid leaves the surface support");
    }
    const auto Ss = g.S_nodes();
    const auto ts = g.t_nodes();
    const bool use_jet = options.prefer_jet && u.has_jet();
    const double limit = p.mu() > 0.0 ? std::pow(3.0 / (4.0 * p.mu()), 3) : 0.0;

    ResidualReport rep;
    rep.finite_differences = !use_jet;
    rep.points.reserve(Ss.size() * ts.size());
    double richardson_max = 0.0;
    bool richardson_any = false;

    const double ht_grid = ts[1] - ts[0];
    for (const double t : ts) {
        for (std::size_t i = 0; i < Ss.size(); ++i) {
            const double S = Ss[i];
            SurfaceJet j;
            if (use_jet) {
                j = u.jet(S, t);
            } else {
                const double spacing = g.spacing == Spacing::log
                                           ? S * (std::log(g.S_max) - std::log(g.S_min)) / double(g.n_S - 1)
                                           : (g.S_max - g.S_min) / double(g.n_S - 1);
                const double hS = options.fd_step_fraction * spacing;
                const double ht = options.fd_step_fraction * ht_grid;
                j.u = u(S, t);
                Derivs d{};
                if (!fd_jet(u, S, t, hS, ht, j.u, d)) {
                    throw ValidationError("support too small for stencil");
                }
                j.u_S = d.u_S;
                j.u_SS = d.u_SS;
                j.u_t = d.u_t;
                if (options.richardson) {
                    Derivs d2{};
                    if (fd_jet(u, S, t, 2.0 * hS, 2.0 * ht, j.u, d2)) {
                        const double r1 = rapm_operator(p, j, S);
                        const double r2 = rapm_operator(p, j.u, d2.u_t, d2.u_S, d2.u_SS, S);
                        richardson_max = std::max(richardson_max, std::abs(r2 - r1) / 15.0);
                        richardson_any = true;
                    }
                }
            }
            const double res = rapm_operator(p, j, S);
            const bool parabolic = p.mu() == 0.0 || S * j.u_SS < limit;
            if (!parabolic) ++rep.parabolicity_violations;
            rep.max_abs = std::max(rep.max_abs, std::abs(res));
            rep.max_abs_u = std::max(rep.max_abs_u, std::abs(j.u));
            if (!std::isfinite(res)) rep.max_abs = std::numeric_limits<double>::infinity();
            rep.points.push_back({S, t, j.u, res, parabolic});
        }
    }
    if (richardson_any) rep.fd_error_estimate = richardson_max;
    return rep;
}

std::string to_csv(const ResidualReport& report) {
    std::ostringstream os;
    os << "S,t,u,residual\n";
    char buf[128];
    for (const auto& pt : report.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", pt.S, pt.t, pt.u, pt.residual);
        os << buf;
    }
    return os.str();
}

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

void check_bs(double sigma, double E, double tau, double S) {
    if (!(sigma > 0.0) || !(E > 0.0) || !(tau > 0.0) || !(S > 0.0)) {
        throw ValidationError("Black-Scholes: sigma, E, T-t and S must be positive");
    }
}

struct D12 {
    double d1;
    double d2;
};

D12 d12(double sigma, double r, double E, double tau, double S) {
    const double sq = sigma * std::sqrt(tau);
    const double d1 = (std::log(S / E) + (r + 0.5 * sigma * sigma) * tau) / sq;
    return {d1, d1 - sq};
}

}  // namespace

double bs_closed_form(double sigma, double r, double E, double tau, double S) {
    check_bs(sigma, E, tau, S);
    const auto [d1, d2] = d12(sigma, r, E, tau, S);
    return S * norm_cdf(d1) - E * std::exp(-r * tau) * norm_cdf(d2);
}

double bs_put(double sigma, double r, double E, double tau, double S) {
    return bs_closed_form(sigma, r, E, tau, S) - S + E * std::exp(-r * tau);
}

double bs_call_delta(double sigma, double r, double E, double tau, double S) {
    check_bs(sigma, E, tau, S);
    return norm_cdf(d12(sigma, r, E, tau, S).d1);
}

double bs_call_gamma(double sigma, double r, double E, double tau, double S) {
    check_bs(sigma, E, tau, S);
    return norm_pdf(d12(sigma, r, E, tau, S).d1) / (S * sigma * std::sqrt(tau));
}

double bs_call_theta(double sigma, double r, double E, double tau, double S) {
    check_bs(sigma, E, tau, S);
    const auto [d1, d2] = d12(sigma, r, E, tau, S);
    return -S * norm_pdf(d1) * sigma / (2.0 * std::sqrt(tau)) - r * E * std::exp(-r * tau) * norm_cdf(d2);
}

SurfaceFn bs_call_surface(double sigma, double r, double E, double T, const Support& support) {
    if (!(support.t_max < T)) throw ValidationError("bs_call_surface: support must end before maturity");
    auto value = [=](double S, double t) { return bs_closed_form(sigma, r, E, T - t, S); };
    auto jet = [=](double S, double t) {
        const double tau = T - t;
        return SurfaceJet{bs_closed_form(sigma, r, E, tau, S), bs_call_theta(sigma, r, E, tau, S),
                          bs_call_delta(sigma, r, E, tau, S), bs_call_gamma(sigma, r, E, tau, S)};
    };
    return {value, support, jet};
}

ConvergenceOrder convergence_order(std::span<const double> errors, double exact_threshold) {
    if (errors.size() != 3) throw ValidationError("convergence_order: need errors at h, h/2, h/4");
    for (double e : errors) {
        if (!(e >= 0.0) || !std::isfinite(e)) throw ValidationError("convergence_order: errors must be finite and >= 0");
    }
    if (std::all_of(errors.begin(), errors.end(), [&](double e) { return e <= exact_threshold; })) {
        return {0.0, true};
    }
    if (!(errors[1] < errors[0]) || !(errors[2] < errors[1])) {
        throw NumericalError("non-monotone errors");
    }
    const double o1 = std::log2(errors[0] / errors[1]);
    const double o2 = std::log2(errors[1] / errors[2]);
    return {0.5 * (o1 + o2), false};
}

}  // namespace rapm
