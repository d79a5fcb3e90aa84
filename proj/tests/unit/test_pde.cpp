// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"
#include "rapm/pde.hpp"
#include "rapm/reductions_rnz.hpp"

namespace rapm {
namespace {

const ModelParams kModel(0.3, 0.05, 0.02, 8.0);

// Call value evaluated in long double, independent of the library routine.
double call_long_double(long double sigma, long double r, long double E, long double tau, long double S) {
    const long double sq = sigma * std::sqrt(tau);
    const long double d1 = (std::log(S / E) + (r + 0.5L * sigma * sigma) * tau) / sq;
    const long double d2 = d1 - sq;
    const auto N = [](long double x) { return 0.5L * std::erfc(-x / std::sqrt(2.0L)); };
    return static_cast<double>(S * N(d1) - E * std::exp(-r * tau) * N(d2));
}

TEST(RapmOperator, LinearInSIsSolution) { EXPECT_EQ(rapm_operator(kModel, 7.0, 0.0, 1.0, 0.0, 7.0), 0.0); }

TEST(RapmOperator, GaugeSolution) {
    const double t = 0.4, e = std::exp(kModel.r() * t);
    EXPECT_NEAR(rapm_operator(kModel, e, kModel.r() * e, 0.0, 0.0, 50.0), 0.0, 1e-16);
}

TEST(RapmOperator, BlackScholesCallAtZeroCost) {
    const ModelParams p(0.3, 0.05, 0.0, 8.0);
    for (double S : {60.0, 100.0, 140.0}) {
        for (double tau : {0.1, 0.5, 1.0}) {
            const double res = rapm_operator(p, bs_closed_form(0.3, 0.05, 100.0, tau, S),
                                             bs_call_theta(0.3, 0.05, 100.0, tau, S),
                                             bs_call_delta(0.3, 0.05, 100.0, tau, S),
                                             bs_call_gamma(0.3, 0.05, 100.0, tau, S), S);
            EXPECT_NEAR(res, 0.0, 1e-11) << "S=" << S << " tau=" << tau;
        }
    }
}

TEST(RapmOperator, SignedCubeRootIsOdd) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double S = 10.0 * u(rng), g = u(rng);
        // The nonlinear part -(s2/2) S^2 g mu cbrt(S g) is even under g -> -g.
        const double lin = 0.5 * kModel.sigma2() * S * S * g;
        const double plus = rapm_operator(kModel, 0.0, 0.0, 0.0, g, S) - lin;
        const double minus = rapm_operator(kModel, 0.0, 0.0, 0.0, -g, S) + lin;
        EXPECT_NEAR(plus, minus, 1e-12 * (1.0 + std::abs(plus)));
    }
}

TEST(RapmOperator, GaugeAndScalingShiftInvariance) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        const double S = 50.0 + 40.0 * u(rng), t = 0.5 + 0.4 * u(rng), lam = 3.0 * u(rng);
        const double v = u(rng), vt = u(rng), vS = u(rng), vSS = 0.01 * u(rng);
        const double base = rapm_operator(kModel, v, vt, vS, vSS, S);
        const double e = std::exp(kModel.r() * t);
        const double gauge = rapm_operator(kModel, v + lam * e, vt + lam * kModel.r() * e, vS, vSS, S);
        const double shift = rapm_operator(kModel, v + lam * S, vt, vS + lam, vSS, S);
        EXPECT_NEAR(gauge, base, 1e-12);
        EXPECT_NEAR(shift, base, 1e-12);
    }
}

TEST(BsClosedForm, AgreesWithLongDouble) {
    EXPECT_NEAR(bs_closed_form(0.3, 0.05, 100.0, 1.0, 100.0), call_long_double(0.3L, 0.05L, 100.0L, 1.0L, 100.0L),
                1e-12);
}

TEST(BsClosedForm, Limits) {
    EXPECT_NEAR(bs_closed_form(0.3, 0.05, 100.0, 1.0, 1e4), 1e4 - 100.0 * std::exp(-0.05), 1e-9);
    EXPECT_NEAR(bs_closed_form(0.3, 0.05, 100.0, 1e-12, 130.0), 30.0, 1e-9);
    EXPECT_NEAR(bs_closed_form(0.3, 0.05, 100.0, 1e-12, 70.0), 0.0, 1e-12);
}

TEST(BsClosedForm, PutCallParity) {
    const double c = bs_closed_form(0.25, 0.03, 90.0, 0.7, 100.0);
    const double pv = bs_put(0.25, 0.03, 90.0, 0.7, 100.0);
    EXPECT_NEAR(c - pv, 100.0 - 90.0 * std::exp(-0.03 * 0.7), 1e-12);
}

TEST(ResidualNorm, NonSolutionReportsS) {
    // u = S t: residual = S.
    const SurfaceFn u([](double S, double t) { return S * t; }, {10.0, 50.0, 0.0, 1.0},
                      [](double S, double t) { return SurfaceJet{S * t, S, t, 0.0}; });
    const GridSpec g{10.0, 50.0, 0.0, 1.0, 9, 5};
    const auto jet = residual_norm(u, kModel, g);
    EXPECT_NEAR(jet.max_abs, 50.0, 1e-12);
    const auto fd = residual_norm(u.values_only(), kModel, g);
    EXPECT_TRUE(fd.finite_differences);
    EXPECT_NEAR(fd.max_abs, 50.0, 1e-8);
}

TEST(ResidualNorm, H2WithJetsIsSmall) {
    const Support sp{10.0, 200.0, 0.0, 0.9};
    const GridSpec g{10.0, 200.0, 0.0, 0.9, 20, 20};
    const auto lower = residual_norm(h2_surface(h2_build(kModel, kPi / 6.0, 0, 0.7, -1.3), sp), kModel, g);
    EXPECT_LE(lower.max_abs, 1e-8 * (1.0 + lower.max_abs_u));
    EXPECT_EQ(lower.parabolicity_violations, 0u);
    // The upper root exceeds 3/(4 m), so S u_SS = k^3/r exceeds (3/(4 mu))^3 everywhere.
    const auto upper = residual_norm(h2_surface(h2_build(kModel, kPi / 6.0, 1, 0.7, -1.3), sp), kModel, g);
    EXPECT_LE(upper.max_abs, 1e-8 * (1.0 + upper.max_abs_u));
    EXPECT_EQ(upper.parabolicity_violations, g.n_S * g.n_t);
}

TEST(ResidualNorm, StencilNeedsRoom) {
    const SurfaceFn u([](double S, double) { return S; }, {1.0, 2.0, 0.0, 1.0});
    ResidualOptions o;
    o.fd_step_fraction = 2.0;
    EXPECT_THROW((void)residual_norm(u, kModel, {1.0, 2.0, 0.0, 1.0, 3, 3}, o), ValidationError);
}

TEST(ResidualNorm, GridOutsideSupport) {
    const SurfaceFn u([](double S, double) { return S; }, {1.0, 2.0, 0.0, 1.0});
    EXPECT_THROW((void)residual_norm(u, kModel, {1.0, 3.0, 0.0, 1.0, 3, 3}), DomainError);
}

TEST(SurfaceJets, H2JetMatchesCenteredDifferencesAtSecondOrder) {
    const auto f = h2_build(kModel, kPi / 3.0, 1, 0.2, 0.5);
    const double S = 80.0, t = 0.3;
    const auto j = h2_jet(f, S, t);
    const auto u = [&](double x, double y) { return h2_eval(f, x, y); };
    std::array<double, 2> err{};
    for (int k = 0; k < 2; ++k) {
        const double h = 0.8 / (k + 1);
        const double dS = (u(S + h, t) - u(S - h, t)) / (2 * h);
        const double dSS = (u(S + h, t) - 2 * u(S, t) + u(S - h, t)) / (h * h);
        err[std::size_t(k)] = std::abs(dS - j.u_S) + std::abs(dSS - j.u_SS);
    }
    EXPECT_GE(std::log2(err[0] / err[1]), 1.9);
}

TEST(GridSpec, Validation) {
    EXPECT_THROW((GridSpec{0.0, 1.0, 0.0, 1.0, 3, 3}.validate()), ValidationError);
    EXPECT_THROW((GridSpec{1.0, 2.0, 0.0, 1.0, 2, 3}.validate()), ValidationError);
    const GridSpec g{1.0, 100.0, 0.0, 1.0, 3, 3, Spacing::log};
    EXPECT_NEAR(g.S_nodes()[1], 10.0, 1e-12);
}

TEST(ConvergenceOrder, Cases) {
    const std::array<double, 3> exact{1e-15, 2e-15, 1e-15};
    EXPECT_TRUE(convergence_order(exact).exact);
    const std::array<double, 3> second{4e-3, 1e-3, 2.5e-4};
    EXPECT_NEAR(convergence_order(second).order, 2.0, 1e-12);
    const std::array<double, 3> bad{1e-3, 2e-3, 1e-4};
    EXPECT_THROW((void)convergence_order(bad), NumericalError);
}

}  // namespace
}  // namespace rapm
