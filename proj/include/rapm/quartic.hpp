// SPDX-License-Identifier: MIT
/**
 * @file quartic.hpp
 * @brief Real roots and root branches of p^3 (1 - m p) + d = 0
 *
 * Every reduction of the RAPM equation ends in a quartic of this shape, with
 * m = mu (r = 0 cases, H3, H4) or m = mu * r^(-1/3) (H2). The derivative
 * f'(p) = p^2 (3 - 4 m p) vanishes only at p = 0 (no sign change) and at
 * p* = 3/(4m), so f is monotone on each side of p*. Hence there are at most
 * two distinct real roots and each lies on its own monotone piece. Branch `i`
 * is the i-th distinct real root in ascending order, which coincides with the
 * piece the root lives on.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rapm {

/// -m p^4 + p^3 + d, stored as (mu_eff = m, d).
struct RapmQuartic {
    double mu_eff = 0.0;
    double d = 0.0;

    [[nodiscard]] double operator()(double p) const noexcept {
        return p * p * p * (1.0 - mu_eff * p) + d;
    }
    [[nodiscard]] double derivative(double p) const noexcept {
        return p * p * (3.0 - 4.0 * mu_eff * p);
    }
    /// Tolerance used for "is a root": 1e-10 * max(1, |p|^4).
    [[nodiscard]] static double residual_tolerance(double p) noexcept;
};

struct RealRoot {
    double value = 0.0;
    int multiplicity = 1;
};

/**
 * All real roots in ascending order; roots closer than 1e-7 are merged and
 * reported with multiplicity 2. The list is empty only when the quartic has
 * no real root; a cubic (mu_eff == 0) always has exactly one entry.
 */
[[nodiscard]] std::vector<RealRoot> real_roots(const RapmQuartic& q);

/// The branch-th distinct real root, if it exists.
[[nodiscard]] std::optional<RealRoot> root_on_branch(const RapmQuartic& q, int branch);

struct RootBranch {
    std::vector<std::pair<double, double>> samples;  ///< (parameter, root)
    int branch_id = 0;
};

struct TrackOptions {
    std::size_t n_samples = 201;
    /// Allowed |delta root| is slope_factor * |delta s| * |dp/ds| (local estimate).
    double slope_factor = 50.0;
    /// Jumps below this are always accepted.
    double abs_floor = 1e-9;
    /// Jumps above this are always rejected.
    double abs_cap = std::numeric_limits<double>::infinity();
};

using QuarticFamily = std::function<RapmQuartic(double)>;

/**
 * Follow the root through `seed_root` as s runs over [s_begin, s_end].
 * Throws BranchTerminated with the parameter value where the root ceases to
 * exist (two roots merge or both vanish) or where the continuity threshold is
 * exceeded. Throws ValidationError if seed_root is not a root of family(s_begin).
 */
[[nodiscard]] RootBranch track_root(const QuarticFamily& family, double s_begin, double s_end,
                                    double seed_root, const TrackOptions& options = {});

/// Branch index of the root of q nearest to `value`; nullopt if q has no real roots.
[[nodiscard]] std::optional<int> branch_of(const RapmQuartic& q, double value);

/// "s,root" CSV with a header line and 17 significant digits.
[[nodiscard]] std::string to_csv(const RootBranch& branch);

}  // namespace rapm
