// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"
#include "rapm/pde.hpp"
#include "rapm/reductions_rnz.hpp"

namespace rapm {
namespace {

const ModelParams kModel(0.3, 0.05, cost_for_mu(0.2, 8.0), 8.0);

// Bisection on a sign change of f on [a, b].
double bisect(const RapmQuartic& q, double a, double b) {
    double fa = q(a);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        if ((q(m) > 0.0) == (fa > 0.0)) {
            a = m;
            fa = q(m);
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// ---------------------------------------------------------------- H2

TEST(H2, ZeroAngleRoots) {
    const auto f0 = h2_build(kModel, 0.0, 0, 0.0, 0.0);
    EXPECT_EQ(f0.k, 0.0);
    const auto f1 = h2_build(kModel, 0.0, 1, 0.0, 0.0);
    EXPECT_NEAR(f1.k, std::cbrt(kModel.r()) / kModel.mu(), 1e-12);
}

TEST(H2, RootMatchesBisection) {
    const auto f = h2_build(kModel, kPi / 6.0, 1, 0.0, 0.0);
    const auto q = f.quartic();
    // f(0) = d > 0 and the larger root lies past the peak 3/(4m).
    const double want = bisect(q, 0.75 / q.mu_eff, 10.0 / q.mu_eff);
    EXPECT_NEAR(f.k, want, 1e-10);
    EXPECT_LE(std::abs(q(f.k)), 1e-10);
}

TEST(H2, TrivialMembersAreSolutions) {
    const Support sp{10.0, 200.0, 0.0, 0.9};
    const GridSpec g{10.0, 200.0, 0.0, 0.9, 15, 15};
    const auto s = h2_build(kModel, 0.0, 0, 1.0, 0.0);
    EXPECT_EQ(h2_eval(s, 37.0, 0.4), 37.0);
    EXPECT_EQ(residual_norm(h2_surface(s, sp), kModel, g).max_abs, 0.0);
    const auto e = h2_build(kModel, 0.0, 0, 0.0, 1.0);
    EXPECT_DOUBLE_EQ(h2_eval(e, 37.0, 0.4), std::exp(0.05 * 0.4));
    EXPECT_LE(residual_norm(h2_surface(e, sp), kModel, g).max_abs, 1e-16);
}

TEST(H2, GridResidual) {
    for (int branch : {0, 1}) {
        const auto f = h2_build(kModel, kPi / 6.0, branch, 0.7, -1.3);
        const auto rep = residual_norm(h2_surface(f, {10.0, 200.0, 0.0, 0.9}), kModel,
                                       {10.0, 200.0, 0.0, 0.9, 20, 20});
        EXPECT_LE(rep.max_abs, 1e-8 * (1.0 + rep.max_abs_u)) << "branch " << branch;
    }
    const auto f = h2_build(kModel, kPi / 6.0, 1, 0.7, -1.3);
    const double k3 = f.k * f.k * f.k;
    EXPECT_DOUBLE_EQ(h2_eval(f, 100.0, 0.5), (k3 / 0.05) * 100.0 * std::log(100.0) - (k3 - f.tau) * 50.0 + 70.0 -
                                                 1.3 * std::exp(0.025));
}

TEST(H2, Errors) {
    EXPECT_THROW((void)h2_build(kModel, kPi / 2.0, 0, 0.0, 0.0), ValidationError);
    EXPECT_THROW((void)h2_build(kModel, kPi / 6.0, 2, 0.0, 0.0), ValidationError);
    EXPECT_THROW((void)h2_build(kModel.with_rate(0.0), 0.0, 0, 0.0, 0.0), ValidationError);
}

// ---------------------------------------------------------------- H3

H3Family reference_h3(std::size_t n = 201) {
    CurveBuildOptions o;
    o.n_samples = n;
    return h3_build(kModel, 1.0, kPi / 3.0, 0, -1.0, 0.0, -1.0, 1.0, o);
}

TEST(H3, DerivedConstants) {
    const auto f = reference_h3();
    const double c = std::cos(kPi / 3.0), s = std::sin(kPi / 3.0);
    EXPECT_NEAR(f.gamma, 1.0 / (1.0 + c), 1e-12);
    EXPECT_NEAR(f.zeta, s / (0.05 * (1.0 + c) - 1.0), 1e-12);
    for (double z : f.curve().z) EXPECT_GT(z, 0.0);
}

TEST(H3, AnchorValues) {
    const auto f = reference_h3();
    EXPECT_EQ(f.curve().theta.front(), -1.0);
    EXPECT_EQ(f.curve().w.front(), 0.0);
    EXPECT_EQ(f.curve().z.front(), 1.0);
    const double t = 0.0, S = 1.0 * std::exp(f.kappa() * t);
    EXPECT_NEAR(h3_eval(f, S, t), f.zeta * S * std::log(S), 1e-14);
}

TEST(H3, NodesReproduced) {
    const auto f = reference_h3();
    const auto& c = f.curve();
    for (std::size_t i = 0; i < c.size(); i += 20) EXPECT_NEAR(f.evaluator.at(c.z[i]).w, c.w[i], 1e-12);
}

TEST(H3, ConstantCoefficientCaseMatchesHandIntegral) {
    // mu = 0, a = 0: k^3 = 2 theta / sigma^2, so the denominator is b theta with b = 2/sigma^2 - 1.
    const ModelParams p(0.3, 0.05, 0.0, 8.0);
    const auto f = h3_build(p, 0.0, 0.4, 0, 0.5, 1.5, 0.5, 2.0);
    EXPECT_EQ(f.zeta, 0.0);
    EXPECT_EQ(f.gamma, 1.0);
    const double b = 2.0 / p.sigma2() - 1.0;
    const auto& c = f.curve();
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_NEAR(c.z[i], 2.0 * std::pow(c.theta[i] / 0.5, 1.0 / b), 1e-10);
        EXPECT_NEAR(c.w[i], (c.theta[i] - 0.5) / b, 1e-10);
    }
}

TEST(H3, ReducedOdeByFiniteDifferences) {
    const auto f = reference_h3();
    const auto [lo, hi] = f.evaluator.z_range();
    const auto w = [&](double z) { return f.evaluator.at(z).w; };
    const double s2 = 0.5 * kModel.sigma2(), mu = kModel.mu(), r = kModel.r();
    double worst = 0.0;
    for (double z : linspace(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 9)) {
        const double h = 1e-3 * z;
        const double w1 = (w(z + h) - w(z - h)) / (2 * h);
        const double w2 = (w(z + h) - 2 * w(z) + w(z - h)) / (h * h);
        const double X = z * (2 * w1 + z * w2) + f.zeta;
        const double res = s2 * X * (1.0 - mu * signed_cbrt(X)) + r * f.zeta - f.gamma * z * w1;
        worst = std::max(worst, std::abs(res));
    }
    EXPECT_LE(worst, 1e-5);
}

TEST(H3, RefinementChangesValuesLittle) {
    const auto coarse = reference_h3(201);
    const auto fine = reference_h3(401);
    for (double S : {0.4, 0.6, 0.8}) EXPECT_NEAR(h3_eval(coarse, S, 0.05), h3_eval(fine, S, 0.05), 1e-6);
}

TEST(H3, SurfaceResidual) {
    const auto f = reference_h3();
    const Support sp{0.35, 0.9, 0.0, 0.1};
    const auto rep = residual_norm(h3_surface(f, sp), kModel, {0.35, 0.9, 0.0, 0.1, 8, 8});
    EXPECT_LE(rep.max_abs, 1e-8);
}

TEST(H3, Errors) {
    const auto f = reference_h3();
    EXPECT_THROW((void)h3_eval(f, 5.0, 0.0), DomainError);
    EXPECT_THROW((void)h3_surface(f, {0.1, 5.0, 0.0, 0.1}), DomainError);
    // r (1 + a cos phi) = 1 with phi = 0: a = 1/r - 1.
    EXPECT_THROW((void)h3_build(kModel, 19.0, 0.0, 0, -1.0, 0.0, -1.0, 1.0), ValidationError);
    EXPECT_THROW((void)h3_build(kModel, -1.0, 0.0, 0, -1.0, 0.0, -1.0, 1.0), ValidationError);
}

TEST(H3, SingularityTruncatesRange) {
    const auto f = reference_h3();
    ASSERT_EQ(f.build.truncated_at.size(), 1u);
    const double zs = f.build.truncated_at.front();
    EXPECT_LT(f.curve().theta.back(), zs);
    EXPECT_NEAR(f.curve().theta.back(), zs - 1e-6 * std::max(1.0, std::abs(zs)), 1e-12);
}

// ---------------------------------------------------------------- H4

TEST(H4, CubicCaseMatchesAntiderivative) {
    // mu = 0, phi = 0: k^3 / z = c / z^2 with c = -2 eps / sigma^2.
    const ModelParams p(0.3, 0.05, 0.0, 8.0);
    const double c = -2.0 / p.sigma2(), a = 20.0;
    for (double z : {30.0, 80.0, 250.0}) {
        const double want = c * ((z - a) / a - std::log(z / a));
        EXPECT_NEAR(h4_eval(p, 0.0, 1, 0, 0.0, 0.0, z, 0.0, a, 300.0), want, 1e-8 * (1.0 + std::abs(want)));
    }
}

TEST(H4, ResidualsOfVariants) {
    const Support sp{40.0, 150.0, 0.0, 0.5};
    const GridSpec g{40.0, 150.0, 0.0, 0.5, 8, 8};
    for (auto v : {H4Variant::printed_solution, H4Variant::invariant_derived_ode}) {
        const auto f = h4_build(kModel, kPi / 6.0, 1, 0, 0.3, 0.2, 20.0, 300.0, v);
        const auto rep = residual_norm(h4_surface(f, sp), kModel, g);
        EXPECT_LE(rep.max_abs, 1e-8 * (1.0 + rep.max_abs_u));
    }
    const auto bad = h4_build(kModel, kPi / 6.0, 1, 0, 0.3, 0.2, 20.0, 300.0, H4Variant::invariant_printed_ode);
    EXPECT_GT(residual_norm(h4_surface(bad, sp), kModel, g).max_abs, 1e-3);
}

TEST(H4, JetMatchesFiniteDifferences) {
    for (auto v : {H4Variant::printed_solution, H4Variant::invariant_derived_ode}) {
        const auto f = h4_build(kModel, kPi / 6.0, -1, 0, 0.3, 0.2, 20.0, 300.0, v);
        const double S = 90.0, t = 0.2, h = 0.05;
        const auto j = h4_jet(f, S, t);
        const auto u = [&](double x, double y) { return h4_eval(f, x, y); };
        EXPECT_NEAR(j.u, u(S, t), 1e-12 * std::abs(j.u));
        EXPECT_NEAR(j.u_S, (u(S + h, t) - u(S - h, t)) / (2 * h), 1e-6);
        EXPECT_NEAR(j.u_SS, (u(S + h, t) - 2 * u(S, t) + u(S - h, t)) / (h * h), 1e-4);
        EXPECT_NEAR(j.u_t, (u(S, t + 1e-4) - u(S, t - 1e-4)) / 2e-4, 1e-5);
    }
}

TEST(H4, Errors) {
    EXPECT_THROW((void)h4_build(kModel, kPi / 6.0, 0, 0, 0.0, 0.0, 20.0, 300.0), ValidationError);
    EXPECT_THROW((void)h4_build(kModel, kPi / 6.0, 1, 0, 0.0, 0.0, 0.0, 300.0), ValidationError);
    const auto f = h4_build(kModel, kPi / 6.0, 1, 0, 0.0, 0.0, 20.0, 300.0);
    EXPECT_THROW((void)h4_eval(f, 10.0, 0.0), DomainError);
}

}  // namespace
}  // namespace rapm
