// SPDX-License-Identifier: MIT
/**
 * @file model.hpp
 * @brief RAPM model constants and well-posedness checks
 *
 * The risk-adjusted pricing equation
 *
 *   u_t + (sigma^2/2) S^2 u_SS (1 - mu (S u_SS)^(1/3)) - r u + r S u_S = 0,
 *   mu = 3 (C^2 R / (2 pi))^(1/3)
 *
 * is parameterized by volatility sigma, rate r, round-trip cost C and the
 * risk-premium coefficient R. Time is measured in years and rates are
 * annualized.
 */

#pragma once

#include <optional>

#include "json.hpp"

namespace rapm {

/// mu = 3 (C^2 R / (2 pi))^(1/3). Throws ValidationError for R <= 0 or C < 0.
[[nodiscard]] double derive_mu(double C, double R);

/// Round-trip cost C that yields a given mu for fixed R (inverse of derive_mu).
[[nodiscard]] double cost_for_mu(double mu, double R);

/**
 * Immutable model parameters. mu is computed at construction and cannot
 * drift from (C, R).
 */
class ModelParams {
public:
    ModelParams(double sigma, double r, double C, double R);

    /// Rejects `mu` if it disagrees with derive_mu(C, R) beyond 1e-12 relative.
    ModelParams(double sigma, double r, double C, double R, double mu);

    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    [[nodiscard]] double sigma2() const noexcept { return sigma_ * sigma_; }
    [[nodiscard]] double r() const noexcept { return r_; }
    [[nodiscard]] double C() const noexcept { return C_; }
    [[nodiscard]] double R() const noexcept { return R_; }
    [[nodiscard]] double mu() const noexcept { return mu_; }

    /// Same market, different rate.
    [[nodiscard]] ModelParams with_rate(double r) const { return {sigma_, r, C_, R_}; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    double sigma_;
    double r_;
    double C_;
    double R_;
    double mu_;
};

void to_json(nlohmann::json& j, const ModelParams& p);
/// Reads keys sigma, r, C, R; any other key is rejected. mu is recomputed.
ModelParams model_params_from_json(const nlohmann::json& j);

struct Admissibility {
    bool c_over_r_ok = false;      ///< C/R < sigma^2 T
    bool cr_product_ok = false;    ///< C R < pi/8
    std::optional<double> t_star;  ///< switching time when strictly positive

    [[nodiscard]] bool ok() const noexcept { return c_over_r_ok && cr_product_ok; }
};

/**
 * Revision interval minimizing the total risk premium:
 *   C^(2/3) / (sigma^2 (R sqrt(2 pi) |S gamma|)^(2/3)),  gamma = u_SS.
 * Throws for gamma == 0 (no-rehedge regime) and for C == 0.
 */
[[nodiscard]] double optimal_time_lag(const ModelParams& p, double S, double gamma);

/// t* = T - C/(R sigma^2). Throws ValidationError when t* <= 0.
[[nodiscard]] double switching_time(const ModelParams& p, double T);

[[nodiscard]] Admissibility admissible(const ModelParams& p, double T);

/// (3/(4 mu))^3 - S*gamma; strictly positive means well posed at (S, gamma).
[[nodiscard]] double parabolicity_margin(double mu, double S, double gamma);

}  // namespace rapm
