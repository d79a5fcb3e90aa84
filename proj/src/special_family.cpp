// SPDX-License-Identifier: MIT
#include "rapm/special_family.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"

namespace rapm {

namespace {

using ld = long double;

// h(theta) for the derived closed form in extended precision. The polynomial part cancels
// the first four terms of the logarithm's series exactly; what remains is
//   s^2/(1+s) q^3 + mu s ((s+4)/(4(1+s)^2) - 1) q^4 + (s+4)/(1+s) a^-3 sum_{n>=5} (a q)^n / n,
// with a = s mu / (1+s), summed directly while |a q| < 1/2.
ld derived_h(ld s, ld mu, ld q) {
    const ld q3 = q * q * q;
    const ld lead = s * s / (1.0L + s) * q3 + mu * s * ((s + 4.0L) / (4.0L * (1.0L + s) * (1.0L + s)) - 1.0L) * q3 * q;
    if (mu == 0.0L) return lead;
    const ld a = s * mu / (1.0L + s);
    const ld x = a * q;
    ld tail = 0.0L;  // sum_{n>=5} x^n / n
    if (std::abs(x) < 0.5L) {
        ld term = x * x * x * x * x;
        for (int n = 5; n < 200; ++n) {
            const ld add = term / ld(n);
            tail += add;
            if (std::abs(add) <= 1e-21L * std::abs(tail)) break;
            term *= x;
        }
    } else {
        tail = -std::log1p(-x) - x - x * x / 2.0L - x * x * x / 3.0L - x * x * x * x / 4.0L;
    }
    return lead + (s + 4.0L) / (1.0L + s) * tail / (a * a * a);
}

// Finite-difference weights (Fornberg) at x0 on the given nodes for derivative orders 0..2.
std::vector<std::array<double, 3>> fornberg_weights(double x0, std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::array<double, 3>> c(n, {0.0, 0.0, 0.0});
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min<std::size_t>(i, 2);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (double(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - double(k) * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    return c;
}

ld printed_g(ld s, ld mu, ld q) {
    const ld Lp = 1.0L - s * (1.0L - mu * q);
    const ld mq = mu * q;
    const ld poly = (s / (mu * mu)) * q *
                    (-4.0L + s * (5.0L + 2.0L * mq) - s * s * (1.0L + mq / 2.0L + (4.0L / 3.0L) * mq * mq) -
                     mu * mu * s * s * s * q * q * (1.0L - mq));
    const ld logc = (4.0L - s) * (1.0L - s) * (1.0L - s) / (mu * mu * mu * s * s * s);
    return poly + logc * std::log(Lp);
}

}  // namespace

SpecialPoint special_point(const ModelParams& p, double theta, double c1, double c2, SpecialVariant variant) {
    if (!(theta > 0.0)) throw ValidationError("theta must be positive");
    const ld s = 0.5L * p.sigma2();
    const ld mu = p.mu();
    const ld th = theta;
    const ld q = std::cbrt(th);
    SpecialPoint pt;
    if (variant == SpecialVariant::derived) {
        const ld g = 1.0L / (1.0L + s);
        const ld L = 1.0L + s * (1.0L - mu * q);
        if (!(L > 0.0L)) throw ValidationError("logarithm domain violated");
        const ld z = c1 * std::exp(-(1.0L + 3.0L * g) * std::log(L) - s * g * std::log(th));
        const ld v = -s * z * (th - mu * th * q);
        const ld hh = derived_h(s, mu, q);
        pt.z = double(z);
        pt.v = double(v);
        pt.w = double(z * (c2 + hh));
        pt.w_z = double(v / z + c2 + hh);
        return pt;
    }
    if (std::abs(1.0L - s) < 1e-14L) throw ValidationError("gamma singular (sigma^2 = 2)");
    if (mu == 0.0L) throw ValidationError("printed closed form requires mu > 0");
    const ld g = 1.0L / (1.0L - s);
    const ld Lp = 1.0L - s * (1.0L - mu * q);
    if (!(Lp > 0.0L)) throw ValidationError("logarithm domain violated");
    const ld z = c1 * std::exp((1.0L + 3.0L * g) * std::log(Lp) - s * g * std::log(th));
    const ld v = -s * z * (th - mu * th * q);
    const ld gg = printed_g(s, mu, q);
    // w_z = (c2 + g) + g_theta / (ln z)_theta.
    const ld dth = 1e-5L * th;
    const ld g_theta = (printed_g(s, mu, std::cbrt(th + dth)) - printed_g(s, mu, std::cbrt(th - dth))) / (2.0L * dth);
    const ld lnz_theta = (1.0L + 3.0L * g) * (s * mu / (3.0L * q * q)) / Lp - s * g / th;
    pt.z = double(z);
    pt.v = double(v);
    pt.w = double(z * (c2 + gg));
    pt.w_z = double(c2 + gg + g_theta / lnz_theta);
    return pt;
}

double special_turning_theta(const ModelParams& p) {
    if (p.mu() == 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(3.0 / (4.0 * p.mu()), 3);
}

ParametricCurve special_build(const ModelParams& p, const SpecialCurveParams& c) {
    if (!(c.theta_begin > 0.0)) throw ValidationError("theta range must be positive");
    if (!(c.theta_end > c.theta_begin)) throw ValidationError("theta range must be increasing");
    if (c.n_samples < 3) throw ValidationError("need at least 3 samples");
    if (c.variant == SpecialVariant::printed && std::abs(p.sigma2() - 2.0) < 1e-14) {
        throw ValidationError("gamma singular (sigma^2 = 2)");
    }
    ParametricCurve curve;
    curve.theta = linspace(c.theta_begin, c.theta_end, c.n_samples);
    for (const double th : curve.theta) {
        const auto pt = special_point(p, th, c.c1, c.c2, c.variant);
        curve.z.push_back(pt.z);
        curve.w.push_back(pt.w);
        curve.w_z.push_back(pt.w_z);
    }
    return curve;
}

ParametricCurve special_build(const ModelParams& p, double c1, double theta_begin, double theta_end) {
    SpecialCurveParams c;
    c.c1 = c1;
    c.theta_begin = theta_begin;
    c.theta_end = theta_end;
    return special_build(p, c);
}

double special_eval(const CurveInterpolant& curve, double alpha, double r, double S, double t) {
    if (r == 1.0) throw ValidationError("r equals 1");
    if (r == 0.0) throw ValidationError("r must be nonzero");
    if (!(S > 0.0)) throw ValidationError("S must be positive");
    const double z = S * std::exp(-(r - 1.0) * t);
    if (!curve.contains(z)) throw DomainError("z outside curve support");
    return (curve.w(z) + alpha * std::exp(t)) * std::exp((r - 1.0) * t);
}

double special_eval(const ParametricCurve& curve, double alpha, double r, double S, double t) {
    return special_eval(CurveInterpolant(curve), alpha, r, S, t);
}

SpecialFamily special_family_build(const ModelParams& p, const SpecialCurveParams& c, double alpha) {
    if (p.r() == 1.0) throw ValidationError("r equals 1");
    if (p.r() == 0.0) throw ValidationError("r must be nonzero");
    ParametricCurve curve = special_build(p, c);
    CurveInterpolant interp(curve);
    return {p, c, alpha, std::move(curve), std::move(interp)};
}

SpecialJetPoint special_at(const SpecialFamily& f, double z) {
    if (!f.interpolant.contains(z)) throw DomainError("z outside curve support");
    SpecialJetPoint out;
    if (f.curve_params.variant == SpecialVariant::printed) {
        const auto d = f.interpolant.derivatives(z);
        out.w = d.w;
        out.w_z = d.w_z;
        out.w_zz = d.w_zz;
        out.theta = z * d.w_zz;
        return out;
    }
    // Nodes of the first monotone segment bracketing z.
    const auto& zs = f.curve.z;
    const bool up = zs[1] > zs[0];
    std::size_t i = 0;
    while (i + 2 < zs.size() && ((zs[i + 2] > zs[i + 1]) == up) && ((zs[i + 1] < z) == up)) ++i;
    const SpecialCurveParams& c = f.curve_params;
    const auto g = [&](double th) { return std::log(special_point(f.params, th, c.c1, c.c2, c.variant).z / z); };
    double a = f.curve.theta[i], b = f.curve.theta[i + 1];
    const double ga = g(a), gb = g(b);
    double theta = a;
    if (ga == 0.0) {
        theta = a;
    } else if (gb == 0.0) {
        theta = b;
    } else {
        std::uintmax_t iters = 200;
        const auto r = boost::math::tools::toms748_solve(g, a, b, ga, gb, boost::math::tools::eps_tolerance<double>(),
                                                         iters);
        theta = 0.5 * (r.first + r.second);
    }
    const SpecialPoint pt = special_point(f.params, theta, c.c1, c.c2, c.variant);
    out.theta = theta;
    out.w = pt.w * (z / pt.z);
    out.w_z = pt.w_z;
    out.w_zz = theta / z;
    return out;
}

SurfaceFn special_surface(const SpecialFamily& f, const Support& support) {
    const auto [lo, hi] = f.interpolant.z_range();
    const double r = f.params.r();
    for (double S : {support.S_min, support.S_max}) {
        for (double t : {support.t_min, support.t_max}) {
            const double z = S * std::exp(-(r - 1.0) * t);
            if (!(z >= lo && z <= hi)) throw DomainError("special_surface: support maps outside the curve's z range");
        }
    }
    auto jet = [f](double S, double t) {
        const double r = f.params.r();
        const double z = S * std::exp(-(r - 1.0) * t);
        const auto d = special_at(f, z);
        const double g = std::exp((r - 1.0) * t);
        return SurfaceJet{(d.w + f.alpha * std::exp(t)) * g,
                          (r - 1.0) * g * (d.w - z * d.w_z) + f.alpha * r * std::exp(r * t), d.w_z, d.w_zz / g};
    };
    return {[jet](double S, double t) { return jet(S, t).u; }, support, jet};
}

Support special_support(const SpecialFamily& f, double t_min, double t_max, double margin) {
    if (!(t_max > t_min)) throw ValidationError("t range must be increasing");
    const auto [lo, hi] = f.interpolant.z_range();
    const double r = f.params.r();
    const double e0 = std::exp((r - 1.0) * t_min);
    const double e1 = std::exp((r - 1.0) * t_max);
    const double S_lo = lo * std::max(e0, e1);
    const double S_hi = hi * std::min(e0, e1);
    if (!(S_hi > S_lo)) throw DomainError("special_support: no S interval maps inside the curve for this t range");
    const double span = std::log(S_hi / S_lo);
    return {S_lo * std::exp(margin * span), S_hi * std::exp(-margin * span), t_min, t_max};
}

SpecialOdeResiduals special_ode_residuals(const ModelParams& p, const ParametricCurve& curve, double c1,
                                          SpecialVariant variant) {
    curve.validate();
    const std::size_t n = curve.size();
    if (n < 7) throw ValidationError("special_ode_residuals: need at least 7 samples");
    const double s = 0.5 * p.sigma2();
    const double mu = p.mu();
    const auto& z = curve.z;
    const auto& w = curve.w;

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = special_point(p, curve.theta[i], c1, 0.0, variant).v;

    if (!std::is_sorted(z.begin(), z.end()) && !std::is_sorted(z.rbegin(), z.rend())) {
        throw ValidationError("special_ode_residuals: z(theta) must be monotone");
    }

    SpecialOdeResiduals out;
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));

    for (std::size_t i = 2; i + 2 < n; ++i) {
        // Five-point weights on the nodes i-2..i+2 for d/dz and d2/dz2 at z_i.
        const auto wt = fornberg_weights(z[i], std::span<const double>(z.data() + i - 2, 5));
        const auto D = [&](const std::vector<double>& y, int order) {
            double acc = 0.0;
            for (std::size_t j = 0; j < 5; ++j) acc += wt[j][std::size_t(order)] * y[i - 2 + j];
            return acc;
        };
        const double vz = D(v, 1);
        const double r1 = vz - mu * pow_four_thirds(vz) + v[i] / (s * z[i]);
        out.first_order = std::max(out.first_order, std::abs(r1));

        const double wz = D(w, 1);
        const double wzz = D(w, 2);
        out.v_consistency = std::max(out.v_consistency, std::abs(z[i] * wz - w[i] - v[i]));

        const double X = z[i] * wzz;
        const double r2 = -w[i] + z[i] * wz + s * z[i] * X * (1.0 - mu * signed_cbrt(X));
        out.second_order = std::max(out.second_order, std::abs(r2));
        ++out.points;
    }
    if (vmax > 0.0) out.v_consistency /= vmax;
    return out;
}

}  // namespace rapm
