// SPDX-License-Identifier: MIT
#include "rapm/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"

namespace rapm {

FdSolution::FdSolution(std::vector<double> S, std::vector<double> t, std::vector<double> values,
                       std::size_t max_picard_iterations)
    : S_(std::move(S)), t_(std::move(t)), values_(std::move(values)), picard_(max_picard_iterations) {}

SurfaceFn FdSolution::surface() const {
    auto S = S_;
    auto t = t_;
    auto v = values_;
    const Support support{S.front(), S.back(), t.front(), t.back()};
    auto value = [S, t, v](double s, double tt) {
        const auto locate = [](const std::vector<double>& x, double q) {
            auto it = std::upper_bound(x.begin(), x.end(), q);
            std::size_t i = it == x.begin() ? 0 : std::size_t(it - x.begin()) - 1;
            return std::min(i, x.size() - 2);
        };
        const std::size_t i = locate(S, s);
        const std::size_t j = locate(t, tt);
        const double a = (s - S[i]) / (S[i + 1] - S[i]);
        const double b = (tt - t[j]) / (t[j + 1] - t[j]);
        const std::size_t n = S.size();
        const double v00 = v[j * n + i], v10 = v[j * n + i + 1];
        const double v01 = v[(j + 1) * n + i], v11 = v[(j + 1) * n + i + 1];
        return (1 - a) * (1 - b) * v00 + a * (1 - b) * v10 + (1 - a) * b * v01 + a * b * v11;
    };
    return {value, support};
}

namespace {

// Three-point weights for D1 and D2 on a non-uniform grid at interior node i.
struct Weights {
    double m1, c1, p1;  // first derivative
    double m2, c2, p2;  // second derivative
};

Weights weights(const std::vector<double>& S, std::size_t i) {
    const double hm = S[i] - S[i - 1];
    const double hp = S[i + 1] - S[i];
    const double s = hm + hp;
    return {-hp / (hm * s), (hp - hm) / (hm * hp), hm / (hp * s),
            2.0 / (hm * s), -2.0 / (hm * hp), 2.0 / (hp * s)};
}

// Solves a tridiagonal system in place (Thomas algorithm); a is sub-, b main, c super-diagonal.
void thomas(std::vector<double>& a, std::vector<double>& b, std::vector<double>& c, std::vector<double>& d) {
    const std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        d[i] -= m * d[i - 1];
    }
    d[n - 1] /= b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

void check_parabolic(const ModelParams& p, const std::vector<double>& S, const std::vector<Weights>& W,
                     const std::vector<double>& u, double t) {
    if (p.mu() == 0.0) return;
    const double limit = std::pow(3.0 / (4.0 * p.mu()), 3);
    for (std::size_t i = 1; i + 1 < S.size(); ++i) {
        const auto& w = W[i];
        const double X = S[i] * (w.m2 * u[i - 1] + w.c2 * u[i] + w.p2 * u[i + 1]);
        if (!(X < limit)) {
            throw ParabolicityLost("parabolicity lost at S=" + std::to_string(S[i]) + ", t=" + std::to_string(t) +
                                       " (S*u_SS=" + std::to_string(X) + ")",
                                   S[i], t);
        }
    }
}

}  // namespace

FdSolution fd_solve(const ModelParams& p, const std::function<double(double)>& terminal,
                    const FdBoundary& boundary, const GridSpec& g, const FdScheme& scheme) {
    g.validate();
    if (!terminal || !boundary.lower || !boundary.upper) throw ValidationError("fd_solve: missing data function");
    if (!(scheme.theta >= 0.0 && scheme.theta <= 1.0)) throw ValidationError("fd_solve: theta must lie in [0, 1]");
    if (scheme.picard_max_iters == 0) throw ValidationError("fd_solve: picard_max_iters must be positive");

    const auto S = g.S_nodes();
    const auto t = g.t_nodes();
    const std::size_t n = S.size();
    const std::size_t m = t.size();

    std::vector<Weights> W(n);
    for (std::size_t i = 1; i + 1 < n; ++i) W[i] = weights(S, i);

    std::vector<double> values(n * m);
    std::vector<double> cur(n);
    for (std::size_t i = 0; i < n; ++i) cur[i] = terminal(S[i]);
    const auto corner_ok = [](double a, double b) { return std::abs(a - b) <= 1e-8 * (1.0 + std::abs(a)); };
    if (!corner_ok(cur.front(), boundary.lower(t.back())) || !corner_ok(cur.back(), boundary.upper(t.back()))) {
        throw ValidationError("fd_solve: terminal and boundary data disagree at a corner");
    }
    check_parabolic(p, S, W, cur, t.back());
    std::copy(cur.begin(), cur.end(), values.begin() + std::ptrdiff_t((m - 1) * n));

    const double half_s2 = 0.5 * p.sigma2();
    const double mu = p.mu();
    const double r = p.r();
    // Diffusion coefficient at node i given the iterate v used for the nonlinear factor.
    const auto diffusion = [&](const std::vector<double>& v, std::size_t i) {
        const auto& w = W[i];
        const double X = S[i] * (w.m2 * v[i - 1] + w.c2 * v[i] + w.p2 * v[i + 1]);
        return half_s2 * S[i] * S[i] * (1.0 - mu * signed_cbrt(X));
    };
    const double th = scheme.theta;
    std::size_t max_iters_used = 0;

    std::vector<double> rhs(n), next(n), a(n), b(n), c(n), v(n);
    for (std::size_t j = m - 1; j-- > 0;) {
        const double dt = t[j + 1] - t[j];
        // Explicit part from the known later time level.
        rhs.front() = boundary.lower(t[j]);
        rhs.back() = boundary.upper(t[j]);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const auto& w = W[i];
            const double A = diffusion(cur, i);
            const double Lu = A * (w.m2 * cur[i - 1] + w.c2 * cur[i] + w.p2 * cur[i + 1]) +
                              r * S[i] * (w.m1 * cur[i - 1] + w.c1 * cur[i] + w.p1 * cur[i + 1]) - r * cur[i];
            rhs[i] = cur[i] + (1.0 - th) * dt * Lu;
        }
        if (th == 0.0) {
            next = rhs;
            max_iters_used = std::max<std::size_t>(max_iters_used, 1);
        } else {
            v = cur;
            bool converged = false;
            const std::size_t iters = mu == 0.0 ? 1 : scheme.picard_max_iters;
            for (std::size_t it = 0; it < iters; ++it) {
                a.assign(n, 0.0);
                c.assign(n, 0.0);
                b.assign(n, 1.0);
                next = rhs;
                for (std::size_t i = 1; i + 1 < n; ++i) {
                    const auto& w = W[i];
                    const double A = diffusion(v, i);
                    a[i] = -th * dt * (A * w.m2 + r * S[i] * w.m1);
                    b[i] = 1.0 - th * dt * (A * w.c2 + r * S[i] * w.c1 - r);
                    c[i] = -th * dt * (A * w.p2 + r * S[i] * w.p1);
                }
                thomas(a, b, c, next);
                double diff = 0.0, scale = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    diff = std::max(diff, std::abs(next[i] - v[i]));
                    scale = std::max(scale, std::abs(next[i]));
                }
                v = next;
                max_iters_used = std::max(max_iters_used, it + 1);
                if (mu == 0.0 || diff <= scheme.picard_tol * (1.0 + scale)) {
                    converged = true;
                    break;
                }
            }
            if (!converged) {
                throw NumericalError("Picard stalled at t=" + std::to_string(t[j]) + " after " +
                                     std::to_string(scheme.picard_max_iters) + " iterations");
            }
        }
        for (double x : next) {
            if (!std::isfinite(x)) throw NumericalError("fd_solve: non-finite value at t=" + std::to_string(t[j]));
        }
        check_parabolic(p, S, W, next, t[j]);
        cur.swap(next);
        std::copy(cur.begin(), cur.end(), values.begin() + std::ptrdiff_t(j * n));
    }
    return {S, t, std::move(values), max_iters_used};
}

}  // namespace rapm
