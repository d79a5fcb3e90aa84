// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"
#include "rapm/pde.hpp"
#include "rapm/reductions_r0.hpp"

namespace rapm {
namespace {

const ModelParams kModel(0.3, 0.0, cost_for_mu(0.2, 8.0), 8.0);

TEST(H20, ZeroAngleRoots) {
    EXPECT_EQ(h2_0_build(kModel, 0.0, 0, 0.0, 0.0).k, 0.0);
    EXPECT_NEAR(h2_0_build(kModel, 0.0, 1, 0.0, 0.0).k, 1.0 / kModel.mu(), 1e-12);
}

TEST(H20, CubicCase) {
    const ModelParams p(0.3, 0.0, 0.0, 8.0);
    const double phi = 0.7;
    EXPECT_NEAR(h2_0_build(p, phi, 0, 0.0, 0.0).k, std::cbrt(-2.0 * std::tan(phi) / p.sigma2()), 1e-12);
}

TEST(H20, RootMatchesBisection) {
    const auto f = h2_0_build(kModel, kPi / 4.0, 0, 0.0, 0.0);
    const auto q = f.quartic();
    double a = -100.0, b = 0.0, fa = q(a);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        if ((q(m) > 0.0) == (fa > 0.0)) {
            a = m;
            fa = q(m);
        } else {
            b = m;
        }
    }
    EXPECT_NEAR(f.k, 0.5 * (a + b), 1e-10);
}

TEST(H20, ClosedFormValues) {
    const auto trivial = h2_0_build(kModel, 0.0, 0, 0.4, 3.0);
    EXPECT_DOUBLE_EQ(h2_0_eval(trivial, 20.0, 0.7), 0.4 * 20.0 + 3.0);
    const auto f = h2_0_build(kModel, kPi / 4.0, 1, 0.4, 3.0);
    EXPECT_DOUBLE_EQ(h2_0_eval(f, 1.0, 0.0), -f.k * f.k * f.k + 0.4 + 3.0);
}

TEST(H20, GridResidualAndGauge) {
    const Support sp{10.0, 200.0, 0.0, 0.9};
    const GridSpec g{10.0, 200.0, 0.0, 0.9, 20, 20};
    for (int branch : {0, 1}) {
        const auto f = h2_0_build(kModel, kPi / 4.0, branch, 0.4, 3.0);
        const auto rep = residual_norm(h2_0_surface(f, sp), kModel, g);
        EXPECT_LE(rep.max_abs, 1e-8 * (1.0 + rep.max_abs_u));
        auto shifted = f;
        shifted.c2 += 17.0;
        const auto rep2 = residual_norm(h2_0_surface(shifted, sp), kModel, g);
        for (std::size_t i = 0; i < rep.points.size(); ++i) {
            EXPECT_NEAR(rep.points[i].residual, rep2.points[i].residual, 1e-12);
        }
    }
}

TEST(H20, Errors) {
    EXPECT_THROW((void)h2_0_build(kModel.with_rate(0.05), 0.0, 0, 0.0, 0.0), ValidationError);
    EXPECT_THROW((void)h2_0_build(kModel, kPi / 2.0, 0, 0.0, 0.0), ValidationError);
    EXPECT_THROW((void)h2_0_build(kModel, kPi / 4.0, 3, 0.0, 0.0), ValidationError);
}

H30Family reference_h30(int branch) { return h3_0_build(kModel, 2.0, kPi / 3.0, branch, 0.0, 1.0, 0.0, 1.0); }

TEST(H30, DerivedConstantsAndAnchor) {
    const auto f = reference_h30(0);
    EXPECT_NEAR(f.delta, 1.0 / (2.0 * std::cos(kPi / 3.0)), 1e-12);
    EXPECT_NEAR(f.zeta, 2.0 * std::sin(kPi / 3.0), 1e-12);
    EXPECT_EQ(f.curve().w.front(), 0.0);
    EXPECT_EQ(f.curve().z.front(), 1.0);
    EXPECT_EQ(f.build.k.front(), 0.0);
    EXPECT_NEAR(reference_h30(1).build.k.front(), 1.0 / kModel.mu(), 1e-12);
}

TEST(H30, ReducedOdeByFiniteDifferences) {
    for (int branch : {0, 1}) {
        const auto f = reference_h30(branch);
        const auto [lo, hi] = f.evaluator.z_range();
        const auto w = [&](double z) { return f.evaluator.at(z).w; };
        const double s2 = 0.5 * kModel.sigma2(), mu = kModel.mu();
        double worst = 0.0;
        for (double z : linspace(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 9)) {
            const double h = 1e-3 * (hi - lo);
            const double w1 = (w(z + h) - w(z - h)) / (2 * h);
            const double w2 = (w(z + h) - 2 * w(z) + w(z - h)) / (h * h);
            const double X = z * (2 * w1 + z * w2) + f.zeta;
            worst = std::max(worst, std::abs(s2 * X * (1.0 - mu * signed_cbrt(X)) + f.delta * z * w1));
        }
        EXPECT_LE(worst, 1e-5) << "branch " << branch;
    }
}

TEST(H30, SurfaceResidual) {
    const auto f = reference_h30(0);
    // z = S e^(delta t) must stay in [0.871, 1].
    const Support sp{0.9, 0.95, 0.0, 0.05};
    const auto rep = residual_norm(h3_0_surface(f, sp), kModel, {0.9, 0.95, 0.0, 0.05, 6, 6});
    EXPECT_LE(rep.max_abs, 1e-8);
}

TEST(H30, Errors) {
    EXPECT_THROW((void)h3_0_build(kModel, 0.0, kPi / 3.0, 0, 0.0, 1.0, 0.0, 1.0), ValidationError);
    EXPECT_THROW((void)h3_0_build(kModel, 2.0, kPi / 2.0, 0, 0.0, 1.0, 0.0, 1.0), ValidationError);
    EXPECT_THROW((void)h3_0_build(kModel, 2.0, kPi / 3.0, 0, -1.0, 0.0, -1.0, 1.0), ValidationError);
}

TEST(H40, CubicCaseMatchesAntiderivative) {
    const ModelParams p(0.3, 0.0, 0.0, 8.0);
    const double c = -2.0 / p.sigma2(), a = 20.0;
    for (double S : {30.0, 80.0, 250.0}) {
        const double want = c * ((S - a) / a - std::log(S / a));
        EXPECT_NEAR(h4_0_eval(p, 0.0, 1, 0, 0.0, 0.0, S, 0.0, a, 300.0), want, 1e-8 * (1.0 + std::abs(want)));
    }
}

TEST(H40, ResidualsOfVariants) {
    const Support sp{40.0, 150.0, 0.0, 0.5};
    const GridSpec g{40.0, 150.0, 0.0, 0.5, 8, 8};
    const auto good = h4_0_build(kModel, kPi / 6.0, 1, 0, 0.3, 0.2, 20.0, 300.0, H40Variant::invariant);
    const auto rep = residual_norm(h4_0_surface(good, sp), kModel, g);
    EXPECT_LE(rep.max_abs, 1e-8 * (1.0 + rep.max_abs_u));
    const auto printed = h4_0_build(kModel, kPi / 6.0, 1, 0, 0.3, 0.2, 20.0, 300.0, H40Variant::printed_solution);
    // u_t misses eps / cos(phi).
    EXPECT_NEAR(residual_norm(h4_0_surface(printed, sp), kModel, g).max_abs, 1.0 / std::cos(kPi / 6.0), 1e-8);
}

TEST(H40, Errors) {
    EXPECT_THROW((void)h4_0_build(kModel, kPi / 6.0, 1, 0, 0.0, 0.0, 0.0, 300.0), ValidationError);
    const auto f = h4_0_build(kModel, kPi / 6.0, 1, 0, 0.0, 0.0, 20.0, 300.0);
    EXPECT_THROW((void)h4_0_eval(f, 10.0, 0.0), DomainError);
}

}  // namespace
}  // namespace rapm
