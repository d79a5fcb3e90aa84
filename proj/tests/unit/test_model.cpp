// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rapm/error.hpp"
#include "rapm/model.hpp"

namespace rapm {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TEST(DeriveMu, ZeroCostGivesZero) { EXPECT_EQ(derive_mu(0.0, 5.0), 0.0); }

TEST(DeriveMu, UnitValue) { EXPECT_NEAR(derive_mu(1.0, kTwoPi / 27.0), 1.0, 1e-15); }

TEST(DeriveMu, MatchesLongDoubleEvaluation) {
    const long double x = 0.01L * 0.01L * 10.0L / (2.0L * std::numbers::pi_v<long double>);
    const long double want = 3.0L * std::cbrt(x);
    EXPECT_NEAR(derive_mu(0.01, 10.0), static_cast<double>(want), 1e-16);
}

TEST(DeriveMu, RejectsNonPositiveR) {
    EXPECT_THROW((void)derive_mu(0.1, 0.0), ValidationError);
    EXPECT_THROW((void)derive_mu(0.1, -1.0), ValidationError);
}

TEST(DeriveMu, CostForMuInverts) {
    for (double mu : {0.0, 0.1, 0.7, 2.5}) EXPECT_NEAR(derive_mu(cost_for_mu(mu, 8.0), 8.0), mu, 1e-14);
}

TEST(ModelParams, RejectsInconsistentMu) {
    const ModelParams p(0.3, 0.05, 0.02, 8.0);
    EXPECT_NO_THROW(ModelParams(0.3, 0.05, 0.02, 8.0, p.mu()));
    EXPECT_THROW(ModelParams(0.3, 0.05, 0.02, 8.0, p.mu() * 1.001), ValidationError);
}

TEST(ModelParams, JsonRoundTripAndUnknownKey) {
    const ModelParams p(0.3, 0.05, 0.02, 8.0);
    nlohmann::json j = p;
    EXPECT_EQ(model_params_from_json(j), p);
    j["mu"] = 1.0;
    EXPECT_THROW((void)model_params_from_json(j), ValidationError);
}

TEST(OptimalTimeLag, GammaScaling) {
    const ModelParams p(0.3, 0.05, 0.02, 8.0);
    const double a = optimal_time_lag(p, 100.0, 0.01);
    const double b = optimal_time_lag(p, 100.0, 0.02);
    EXPECT_NEAR(b / a, std::pow(2.0, -2.0 / 3.0), 1e-14);
    EXPECT_DOUBLE_EQ(optimal_time_lag(p, 100.0, -0.01), a);
}

TEST(OptimalTimeLag, RepresentativeValue) {
    const ModelParams p(0.3, 0.05, 0.02, 8.0);
    const double want = std::pow(0.02, 2.0 / 3.0) / (0.09 * std::pow(8.0 * std::sqrt(kTwoPi) * 1.0, 2.0 / 3.0));
    EXPECT_NEAR(optimal_time_lag(p, 100.0, 0.01), want, 1e-15);
}

TEST(OptimalTimeLag, VanishesAsCostVanishes) {
    double prev = 1e300;
    for (double C : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double lag = optimal_time_lag(ModelParams(0.3, 0.05, C, 8.0), 100.0, 0.01);
        EXPECT_LT(lag, prev);
        prev = lag;
    }
    EXPECT_LT(prev, 1e-5);
}

TEST(OptimalTimeLag, Errors) {
    EXPECT_THROW((void)optimal_time_lag(ModelParams(0.3, 0.05, 0.02, 8.0), 100.0, 0.0), ValidationError);
    EXPECT_THROW((void)optimal_time_lag(ModelParams(0.3, 0.05, 0.0, 8.0), 100.0, 0.01), ValidationError);
}

TEST(SwitchingTime, Values) {
    EXPECT_EQ(switching_time(ModelParams(0.3, 0.05, 0.0, 8.0), 1.0), 1.0);
    EXPECT_NEAR(switching_time(ModelParams(0.3, 0.05, 0.02, 8.0), 1.0), 1.0 - 0.02 / 0.72, 1e-15);
}

TEST(SwitchingTime, NonPositiveIsError) {
    const ModelParams p(0.3, 0.05, 0.02, 8.0);
    EXPECT_THROW((void)switching_time(p, 0.02 / (8.0 * p.sigma2())), ValidationError);
    EXPECT_THROW((void)switching_time(p, 0.001), ValidationError);
}

TEST(Admissible, ZeroCost) {
    const auto a = admissible(ModelParams(0.3, 0.05, 0.0, 8.0), 1.0);
    EXPECT_TRUE(a.c_over_r_ok);
    EXPECT_TRUE(a.cr_product_ok);
    ASSERT_TRUE(a.t_star.has_value());
    EXPECT_EQ(*a.t_star, 1.0);
}

TEST(Admissible, ProductBoundViolated) {
    const auto a = admissible(ModelParams(0.3, 0.05, 1.0, 1.0), 1.0);
    EXPECT_FALSE(a.cr_product_ok);
    EXPECT_FALSE(a.ok());
}

TEST(Admissible, Representative) {
    const auto a = admissible(ModelParams(0.3, 0.05, 0.02, 8.0), 1.0);
    EXPECT_EQ(a.c_over_r_ok, 0.02 / 8.0 < 0.09);
    EXPECT_EQ(a.cr_product_ok, 0.16 < std::numbers::pi / 8.0);
    EXPECT_TRUE(a.ok());
}

TEST(ParabolicityMargin, NonPositiveGammaAlwaysPositive) {
    for (double g : {0.0, -1.0, -1e6}) EXPECT_GT(parabolicity_margin(0.7, 50.0, g), 0.0);
}

TEST(ParabolicityMargin, BoundaryIsZero) {
    EXPECT_EQ(parabolicity_margin(1.0, 1.0, 27.0 / 64.0), 0.0);
}

TEST(ParabolicityMargin, Representative) {
    EXPECT_NEAR(parabolicity_margin(0.5, 100.0, 0.01), 1.5 * 1.5 * 1.5 - 1.0, 1e-14);
}

TEST(ParabolicityMargin, RejectsZeroMu) {
    EXPECT_THROW((void)parabolicity_margin(0.0, 1.0, 1.0), ValidationError);
}

}  // namespace
}  // namespace rapm
