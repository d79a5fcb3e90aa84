// SPDX-License-Identifier: MIT
/**
 * @file surface.hpp
 * @brief Functions u(S, t) on a rectangular support, optionally with jets
 */

#pragma once

#include <functional>
#include <optional>

namespace rapm {

struct Support {
    double S_min = 0.0;
    double S_max = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;

    [[nodiscard]] bool contains(double S, double t) const noexcept {
        return S >= S_min && S <= S_max && t >= t_min && t <= t_max;
    }
};

/// Value and the derivatives entering the RAPM operator.
struct SurfaceJet {
    double u = 0.0;
    double u_t = 0.0;
    double u_S = 0.0;
    double u_SS = 0.0;
};

/**
 * A surface u(S, t). Evaluation outside the support throws DomainError.
 * When a jet function is attached, verifiers use it instead of finite
 * differences.
 */
class SurfaceFn {
public:
    using ValueFn = std::function<double(double, double)>;
    using JetFn = std::function<SurfaceJet(double, double)>;

    SurfaceFn(ValueFn value, Support support, JetFn jet = {});

    [[nodiscard]] double operator()(double S, double t) const;
    [[nodiscard]] bool has_jet() const noexcept { return static_cast<bool>(jet_); }
    /// Throws ValidationError when no jet is attached.
    [[nodiscard]] SurfaceJet jet(double S, double t) const;
    [[nodiscard]] const Support& support() const noexcept { return support_; }

    /// Same values on the same support, jet dropped.
    [[nodiscard]] SurfaceFn values_only() const { return {value_, support_}; }
    /// Same function restricted to a sub-rectangle; throws if `s` is not inside.
    [[nodiscard]] SurfaceFn restricted(const Support& s) const;

private:
    ValueFn value_;
    Support support_;
    JetFn jet_;
};

}  // namespace rapm
