// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>

#include "rapm/curve.hpp"
#include "rapm/error.hpp"
#include "rapm/numeric.hpp"
#include "rapm/quadrature.hpp"

namespace rapm {
namespace {

TEST(Integrate, ConstantAndPolynomialExact) {
    EXPECT_NEAR(integrate([](double) { return 3.0; }, 1.0, 4.0).value, 9.0, 1e-14);
    EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0).value, 9.0, 1e-13);
}

TEST(Integrate, ReversedLimitsNegate) {
    const auto f = [](double x) { return std::exp(x); };
    EXPECT_NEAR(integrate(f, 2.0, 0.0).value, -(std::exp(2.0) - 1.0), 1e-12);
}

TEST(Integrate, SmoothFunctionWithinTolerance) {
    const auto r = integrate([](double x) { return 1.0 / x; }, 1.0, 100.0);
    EXPECT_NEAR(r.value, std::log(100.0), 1e-9);
    EXPECT_LE(r.error, 1e-8);
}

TEST(RepeatedIntegral, ConstantGivesQuadratic) {
    // int_a^z int_a^y 2 dx dy = (z - a)^2.
    EXPECT_NEAR(repeated_integral([](double) { return 2.0; }, 1.0, 4.0).value, 9.0, 1e-13);
}

TEST(RepeatedIntegral, ReciprocalAntiderivative) {
    // Inner c ln(y/a), outer c (z ln(z/a) - z + a).
    const double c = 1.7, a = 0.5, z = 3.0;
    const double want = c * (z * std::log(z / a) - z + a);
    EXPECT_NEAR(repeated_integral([&](double x) { return c / x; }, a, z).value, want, 1e-10);
}

ParametricCurve sample_curve(std::size_t n) {
    ParametricCurve c;
    c.theta = linspace(0.0, 1.0, n);
    for (double th : c.theta) {
        c.z.push_back(1.0 + th * th + th);
        c.w.push_back(std::sin(th));
    }
    return c;
}

TEST(ParametricCurve, ValidateRejectsBadInput) {
    auto c = sample_curve(5);
    EXPECT_NO_THROW(c.validate());
    c.w.pop_back();
    EXPECT_THROW(c.validate(), ValidationError);
    auto d = sample_curve(5);
    d.theta[2] = d.theta[1];
    EXPECT_THROW(d.validate(), ValidationError);
    auto e = sample_curve(1);
    EXPECT_THROW(e.validate(), ValidationError);
}

TEST(CurveInterpolant, ReproducesNodes) {
    const auto c = sample_curve(21);
    const CurveInterpolant f(c);
    ASSERT_EQ(f.segment_count(), 1u);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(f.w(c.z[i]), c.w[i]);
}

TEST(CurveInterpolant, InteriorAccuracyImprovesWithSamples) {
    // w(z) = sin(theta(z)) with theta = (-1 + sqrt(4z - 3)) / 2.
    const auto exact = [](double z) { return std::sin(0.5 * (-1.0 + std::sqrt(4.0 * z - 3.0))); };
    double prev = 1.0;
    for (std::size_t n : {11u, 21u, 41u}) {
        const CurveInterpolant f(sample_curve(n));
        double err = 0.0;
        for (double z : linspace(1.05, 2.95, 37)) err = std::max(err, std::abs(f.w(z) - exact(z)));
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 1e-4);
}

TEST(CurveInterpolant, SplitsAtReversal) {
    ParametricCurve c;
    c.theta = linspace(-1.0, 1.0, 41);
    for (double th : c.theta) {
        c.z.push_back(1.0 + th * th);
        c.w.push_back(th);
    }
    const CurveInterpolant f(c);
    EXPECT_EQ(f.segment_count(), 2u);
    EXPECT_LT(f.w(1.5, 0), 0.0);
    EXPECT_GT(f.w(1.5, 1), 0.0);
}

TEST(CurveInterpolant, OutsideSupportThrows) {
    const CurveInterpolant f(sample_curve(11));
    EXPECT_THROW((void)f.w(0.5), DomainError);
    EXPECT_THROW((void)f.w(3.5), DomainError);
}

TEST(CurveCsv, Header) { EXPECT_EQ(to_csv(sample_curve(2)).rfind("theta,z,w\n", 0), 0u); }

}  // namespace
}  // namespace rapm
