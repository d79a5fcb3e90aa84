// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "rapm/error.hpp"
#include "rapm/fd_solver.hpp"
#include "rapm/numeric.hpp"
#include "rapm/reductions_rnz.hpp"

namespace rapm {
namespace {

double max_error(const FdSolution& sol, const std::function<double(double, double)>& exact) {
    double err = 0.0;
    for (std::size_t j = 0; j < sol.t().size(); ++j) {
        for (std::size_t i = 0; i < sol.S().size(); ++i) {
            err = std::max(err, std::abs(sol.at(i, j) - exact(sol.S()[i], sol.t()[j])));
        }
    }
    return err;
}

FdBoundary boundary_from(const std::function<double(double, double)>& u, const GridSpec& g) {
    return {[=](double t) { return u(g.S_min, t); }, [=](double t) { return u(g.S_max, t); }};
}

TEST(FdSolve, LinearInSIsExact) {
    const ModelParams p(0.3, 0.05, 0.02, 8.0);
    const auto u = [](double S, double) { return 0.6 * S; };
    const GridSpec g{50.0, 150.0, 0.0, 0.5, 41, 21};
    const auto sol = fd_solve(p, [&](double S) { return u(S, g.t_max); }, boundary_from(u, g), g);
    EXPECT_LE(max_error(sol, u), 1e-12);
}

TEST(FdSolve, AffineSolutionToTimeSteppingAccuracy) {
    // u_SS = 0 removes the nonlinearity; e^(rt) still carries the O(dt^2) error of the time step.
    const ModelParams p(0.3, 0.05, 0.02, 8.0);
    const auto u = [&](double S, double t) { return 0.6 * S + 2.0 * std::exp(p.r() * t); };
    const GridSpec g{50.0, 150.0, 0.0, 0.5, 41, 201};
    const auto sol = fd_solve(p, [&](double S) { return u(S, g.t_max); }, boundary_from(u, g), g);
    EXPECT_LE(max_error(sol, u), 1e-10);
}

TEST(FdSolve, BlackScholesCallConverges) {
    const ModelParams p(0.3, 0.05, 0.0, 8.0);
    const double T = 1.0, E = 100.0;
    const auto u = [&](double S, double t) { return bs_closed_form(0.3, 0.05, E, T - t, S); };
    std::array<double, 3> err{};
    for (int k = 0; k < 3; ++k) {
        const std::size_t n = 50u << k;
        const GridSpec g{50.0, 150.0, 0.0, 0.5, n + 1, n + 1};
        const auto sol = fd_solve(p, [&](double S) { return u(S, g.t_max); }, boundary_from(u, g), g);
        err[std::size_t(k)] = max_error(sol, u);
    }
    EXPECT_LE(err[2], 1e-3);
    EXPECT_GE(convergence_order(err).order, 1.8);
}

TEST(FdSolve, H2ManufacturedSolutionNonlinear) {
    const ModelParams p(0.3, 0.05, cost_for_mu(0.2, 8.0), 8.0);
    const auto f = h2_build(p, kPi / 6.0, 0, 0.7, -1.3);
    const auto u = [&](double S, double t) { return h2_eval(f, S, t); };
    std::array<double, 3> err{};
    for (int k = 0; k < 3; ++k) {
        const std::size_t n = 50u << k;
        const GridSpec g{10.0, 200.0, 0.0, 0.9, n + 1, n + 1};
        const auto sol = fd_solve(p, [&](double S) { return u(S, g.t_max); }, boundary_from(u, g), g);
        err[std::size_t(k)] = max_error(sol, u);
    }
    EXPECT_LT(err[1], err[0]);
    EXPECT_LT(err[2], err[1]);
    EXPECT_LE(err[2], 1e-2);
}

TEST(FdSolve, LinearAtZeroCost) {
    const ModelParams p(0.3, 0.05, 0.0, 8.0);
    const GridSpec g{50.0, 150.0, 0.0, 0.5, 61, 31};
    const auto f1 = [](double S) { return std::max(S - 100.0, 0.0); };
    const auto f2 = [](double S) { return 0.001 * S * S; };
    const FdBoundary bd1{[](double) { return 0.0; }, [](double) { return 50.0; }};
    const FdBoundary bd2{[](double) { return 2.5; }, [](double) { return 22.5; }};
    const FdBoundary bds{[](double) { return 2.5; }, [](double) { return 72.5; }};
    const auto s1 = fd_solve(p, f1, bd1, g);
    const auto s2 = fd_solve(p, f2, bd2, g);
    const auto ss = fd_solve(p, [&](double S) { return f1(S) + f2(S); }, bds, g);
    for (std::size_t j = 0; j < g.n_t; ++j) {
        for (std::size_t i = 0; i < g.n_S; ++i) EXPECT_NEAR(ss.at(i, j), s1.at(i, j) + s2.at(i, j), 1e-10);
    }
}

TEST(FdSolve, ParabolicityLostIsLocated) {
    const ModelParams p(0.3, 0.05, 0.02, 8.0);
    const double limit = std::pow(3.0 / (4.0 * p.mu()), 3);
    // The kink at S = 100 has S u_SS = 2 S / h at the node.
    const GridSpec g{50.0, 150.0, 0.0, 0.5, 101, 11};
    const auto payoff = [](double S) { return std::abs(S - 100.0); };
    const FdBoundary bd{[](double) { return 50.0; }, [](double) { return 50.0; }};
    ASSERT_GT(100.0 * 2.0, limit);
    try {
        (void)fd_solve(p, payoff, bd, g);
        FAIL() << "expected ParabolicityLost";
    } catch (const ParabolicityLost& e) {
        EXPECT_DOUBLE_EQ(e.S(), 100.0);
        EXPECT_DOUBLE_EQ(e.t(), 0.5);
    }
}

TEST(FdSolve, CornerMismatchRejected) {
    const ModelParams p(0.3, 0.05, 0.0, 8.0);
    const GridSpec g{50.0, 150.0, 0.0, 0.5, 11, 11};
    const FdBoundary bd{[](double) { return 1.0; }, [](double) { return 150.0; }};
    EXPECT_THROW((void)fd_solve(p, [](double S) { return S; }, bd, g), ValidationError);
}

TEST(FdSolve, PicardStallsWithOneIteration) {
    const ModelParams p(0.3, 0.05, cost_for_mu(0.2, 8.0), 8.0);
    const auto f = h2_build(p, kPi / 6.0, 0, 0.7, -1.3);
    const auto u = [&](double S, double t) { return h2_eval(f, S, t); };
    const GridSpec g{10.0, 200.0, 0.0, 0.9, 21, 11};
    FdScheme scheme;
    scheme.picard_max_iters = 1;
    EXPECT_THROW((void)fd_solve(p, [&](double S) { return u(S, g.t_max); }, boundary_from(u, g), g, scheme),
                 NumericalError);
}

TEST(FdSolution, BilinearSurfaceReproducesNodes) {
    const FdSolution sol({1.0, 2.0}, {0.0, 1.0}, {1.0, 2.0, 3.0, 4.0}, 1);
    const auto s = sol.surface();
    EXPECT_EQ(s(2.0, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(s(1.5, 0.5), 2.5);
}

}  // namespace
}  // namespace rapm
