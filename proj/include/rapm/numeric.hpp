// SPDX-License-Identifier: MIT
/**
 * @file numeric.hpp
 * @brief Small numeric helpers used across modules
 */

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace rapm {

/// Real (odd) cube root: sign(x)*|x|^(1/3).
inline double signed_cbrt(double x) noexcept { return std::cbrt(x); }

/// x^(4/3) for x >= 0 written through the real cube root.
inline double pow_four_thirds(double x) noexcept {
    const double c = std::cbrt(x);
    return c * c * c * c;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    v.back() = hi;
    return v;
}

inline std::vector<double> geomspace(double lo, double hi, std::size_t n) {
    std::vector<double> v = linspace(std::log(lo), std::log(hi), n);
    for (auto& x : v) x = std::exp(x);
    v.front() = lo;
    v.back() = hi;
    return v;
}

inline constexpr double kPi = std::numbers::pi;

}  // namespace rapm
