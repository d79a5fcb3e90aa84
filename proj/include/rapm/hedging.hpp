// SPDX-License-Identifier: MIT
/**
 * @file hedging.hpp
 * @brief GBM paths, risk-premium accounting and discrete delta hedging
 *
 * Paths: S_{j+1} = S_j exp((rho - sigma^2/2) dt + sigma sqrt(dt) Z). Each path
 * owns a std::mt19937_64 seeded with splitmix64(seed + golden * (path + 1)),
 * and normals come from the Marsaglia polar method, so a path depends only on
 * (seed, path index) and results do not depend on how paths are partitioned.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rapm/model.hpp"
#include "rapm/surface.hpp"

namespace rapm {

inline constexpr const char* kRngAlgorithm = "mt19937_64/splitmix64-per-path/marsaglia-polar";

struct PathConfig {
    double S0 = 100.0;
    double rho = 0.0;
    double sigma = 0.2;
    double dt = 1.0 / 252.0;
    double horizon = 1.0;
    std::uint64_t seed = 0;
    std::size_t n_paths = 1;

    void validate() const;
    /// ceil(horizon/dt) with a small tolerance, so dt dividing horizon is exact.
    [[nodiscard]] std::size_t steps() const;
    /// horizon / steps().
    [[nodiscard]] double effective_dt() const;
};

class PathMatrix {
public:
    PathMatrix(std::size_t n_paths, std::size_t n_steps, double dt, std::vector<double> values);

    [[nodiscard]] std::size_t n_paths() const noexcept { return n_paths_; }
    [[nodiscard]] std::size_t n_steps() const noexcept { return n_steps_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] double operator()(std::size_t path, std::size_t step) const {
        return values_[path * (n_steps_ + 1) + step];
    }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

private:
    std::size_t n_paths_;
    std::size_t n_steps_;
    double dt_;
    std::vector<double> values_;
};

/// One path, steps()+1 values starting at S0.
[[nodiscard]] std::vector<double> gbm_path(const PathConfig& c, std::size_t path_index);
[[nodiscard]] PathMatrix gbm_paths(const PathConfig& c);

enum class TcAccounting {
    /// C sigma S |gamma| / (sqrt(2 pi) sqrt(dt)), a rate per unit time.
    per_unit_time,
    /// C sigma S |gamma| / sqrt(2 pi), without the revision-interval factor.
    interval_free,
};

[[nodiscard]] double risk_tc(const ModelParams& p, double S, double gamma, double dt,
                             TcAccounting accounting = TcAccounting::per_unit_time);
/// (1/2) R sigma^4 S^2 gamma^2 dt.
[[nodiscard]] double risk_vp(const ModelParams& p, double S, double gamma, double dt);

struct RiskBreakdown {
    double r_tc = 0.0;
    double r_vp = 0.0;
    double r_total = 0.0;
    double dt = 0.0;
};

[[nodiscard]] RiskBreakdown risk_breakdown(const ModelParams& p, double S, double gamma, double dt);

struct Minimum {
    double x = 0.0;
    double fx = 0.0;
};

/**
 * Golden-section search for a unimodal f on [lo, hi], in ln x when `log_scale`.
 * Throws NumericalError("minimizer at boundary") when the minimum sits at an
 * end of the bracket.
 */
[[nodiscard]] Minimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                              bool log_scale = true, double rel_tol = 1e-10);

/// argmin over dt in [1e-10, 1] of risk_tc + risk_vp.
[[nodiscard]] double empirical_optimal_lag(const ModelParams& p, double S, double gamma);

struct HedgeStatistics {
    std::size_t n_paths = 0;
    std::size_t rebalances_per_path = 0;
    double mean_error = 0.0;
    double variance_error = 0.0;  ///< unbiased sample variance
    double mean_cost = 0.0;       ///< cumulative transaction costs per path
    double variance_cost = 0.0;
    /// mean_cost + R * variance_error / S0: realized counterpart of the risk premium.
    double risk_adjusted_loss = 0.0;
    std::vector<double> errors;  ///< per path
    std::vector<double> costs;   ///< per path
};

/**
 * Delta hedge of the claim `u` along GBM paths. At t = 0 the portfolio holds
 * delta = u_S(S0, 0) and cash u(S0, 0) - delta S0 (no initial cost). Cash
 * accrues at p.r(); every `rebalance_dt` the delta is reset to u_S(S, t) and
 * (C/2) S |change in delta| is paid. Terminal error: cash + delta S_H - u(S_H, H).
 * `rebalance_dt` must be a multiple of the path step.
 */
[[nodiscard]] HedgeStatistics hedge_simulation(const ModelParams& p, const SurfaceFn& u, const PathConfig& c,
                                               double rebalance_dt);

}  // namespace rapm
