// SPDX-License-Identifier: MIT
/**
 * @file fd_solver.hpp
 * @brief Backward finite-difference solver for the RAPM equation
 *
 * Three-point differences in S (non-uniform when the grid is logarithmic),
 * theta-weighted time stepping from t_max down to t_min and Dirichlet data at
 * both S boundaries. The nonlinear volatility factor of the implicit part is
 * frozen at the current Picard iterate and the step is repeated until the
 * iterates agree.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rapm/model.hpp"
#include "rapm/pde.hpp"
#include "rapm/surface.hpp"

namespace rapm {

struct FdScheme {
    /// Implicit weight: 0 explicit, 1/2 Crank-Nicolson, 1 fully implicit.
    double theta = 0.5;
    std::size_t picard_max_iters = 50;
    double picard_tol = 1e-12;  ///< relative to 1 + max |u|
};

struct FdBoundary {
    std::function<double(double)> lower;  ///< u(S_min, t)
    std::function<double(double)> upper;  ///< u(S_max, t)
};

class FdSolution {
public:
    FdSolution(std::vector<double> S, std::vector<double> t, std::vector<double> values,
               std::size_t max_picard_iterations);

    [[nodiscard]] const std::vector<double>& S() const noexcept { return S_; }
    [[nodiscard]] const std::vector<double>& t() const noexcept { return t_; }
    /// Node value at (S_i, t_j).
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values_[j * S_.size() + i]; }
    [[nodiscard]] std::size_t max_picard_iterations() const noexcept { return picard_; }
    /// Bilinear interpolation of the node values.
    [[nodiscard]] SurfaceFn surface() const;

private:
    std::vector<double> S_;
    std::vector<double> t_;
    std::vector<double> values_;  // row-major in t
    std::size_t picard_;
};

/**
 * Solve backward from `terminal` at g.t_max. Throws ValidationError if the
 * terminal and boundary data disagree at the corners beyond 1e-8 (relative to
 * 1 + |u|), ParabolicityLost at the first node where S u_SS >= (3/(4 mu))^3
 * (checked on the terminal data and after every step), and
 * NumericalError("Picard stalled") if a step does not converge.
 */
[[nodiscard]] FdSolution fd_solve(const ModelParams& p, const std::function<double(double)>& terminal,
                                  const FdBoundary& boundary, const GridSpec& g, const FdScheme& scheme = {});

}  // namespace rapm
