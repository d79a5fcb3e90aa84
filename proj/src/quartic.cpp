// SPDX-License-Identifier: MIT
#include "rapm/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rapm/error.hpp"

namespace rapm {
namespace {

constexpr double kMergeDistance = 1e-7;

// Safeguarded Newton on a bracket [lo, hi] with f(lo), f(hi) of opposite sign.
double solve_bracketed(const RapmQuartic& q, double lo, double hi) {
    double flo = q(lo);
    double fhi = q(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    // Orient so that f(lo) < 0 < f(hi).
    if (flo > 0.0) {
        std::swap(lo, hi);
        std::swap(flo, fhi);
    }
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 2000; ++iter) {
        const double fx = q(x);
        if (fx == 0.0) return x;
        if (fx < 0.0) lo = x; else hi = x;
        const double width = std::abs(hi - lo);
        if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)) ||
            width < std::numeric_limits<double>::min()) {
            break;
        }
        const double dfx = q.derivative(x);
        double next = (dfx != 0.0) ? x - fx / dfx : lo;  // NaN guard below
        const double a = std::min(lo, hi);
        const double b = std::max(lo, hi);
        // Fall back to bisection when Newton leaves the bracket or stalls.
        if (!(next > a && next < b) || std::abs(next - x) > 0.5 * width) {
            next = 0.5 * (lo + hi);
        }
        if (next == x) break;
        x = next;
    }
    // Pick the best of the final candidates.
    double best = x;
    for (double c : {lo, hi}) {
        if (std::abs(q(c)) < std::abs(q(best))) best = c;
    }
    return best;
}

double cauchy_bound(const RapmQuartic& q) {
    // Roots of p^4 - p^3/m - d/m.
    const double m = std::abs(q.mu_eff);
    return 1.0 + std::max(1.0 / m, std::abs(q.d) / m);
}

}  // namespace

double RapmQuartic::residual_tolerance(double p) noexcept {
    const double p2 = p * p;
    return 1e-10 * std::max(1.0, p2 * p2);
}

std::vector<RealRoot> real_roots(const RapmQuartic& q) {
    const double m = q.mu_eff;
    const double d = q.d;
    std::vector<RealRoot> roots;

    if (m == 0.0) {
        roots.push_back({std::cbrt(-d), d == 0.0 ? 3 : 1});
        return roots;
    }
    if (d == 0.0) {
        roots.push_back({0.0, 3});
        roots.push_back({1.0 / m, 1});
        std::sort(roots.begin(), roots.end(),
                  [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
        return roots;
    }

    const double peak = 3.0 / (4.0 * m);
    const double peak_cubed = peak * peak * peak;
    const double f_peak = 0.25 * peak_cubed + d;  // f(p*) = p*^3 (1 - 3/4) + d
    const double scale = std::abs(0.25 * peak_cubed) + std::abs(d);

    if (std::abs(f_peak) <= 8.0 * std::numeric_limits<double>::epsilon() * scale) {
        roots.push_back({peak, 2});
        return roots;
    }
    // m > 0: maximum at p*, roots iff f(p*) > 0.  m < 0: minimum, roots iff f(p*) < 0.
    const bool has_roots = (m > 0.0) ? (f_peak > 0.0) : (f_peak < 0.0);
    if (!has_roots) return roots;

    const double bound = cauchy_bound(q) + std::abs(peak);
    const double lower = solve_bracketed(q, -bound, peak);
    const double upper = solve_bracketed(q, peak, bound);
    if (std::abs(upper - lower) < kMergeDistance) {
        roots.push_back({0.5 * (lower + upper), 2});
    } else {
        roots.push_back({lower, 1});
        roots.push_back({upper, 1});
    }
    return roots;
}

std::optional<RealRoot> root_on_branch(const RapmQuartic& q, int branch) {
    if (branch < 0) return std::nullopt;
    const auto roots = real_roots(q);
    if (static_cast<std::size_t>(branch) >= roots.size()) return std::nullopt;
    return roots[static_cast<std::size_t>(branch)];
}

std::optional<int> branch_of(const RapmQuartic& q, double value) {
    const auto roots = real_roots(q);
    if (roots.empty()) return std::nullopt;
    int best = 0;
    for (std::size_t i = 1; i < roots.size(); ++i) {
        if (std::abs(roots[i].value - value) < std::abs(roots[static_cast<std::size_t>(best)].value - value)) {
            best = static_cast<int>(i);
        }
    }
    return best;
}

namespace {

// A branch is alive at s when it has a simple root there (no merge, no vanishing).
// Triple roots at p = 0 are allowed: f stays monotone through them.
std::optional<double> alive_root(const QuarticFamily& family, double s, int branch) {
    const auto q = family(s);
    const auto roots = real_roots(q);
    if (roots.size() < 2 && q.mu_eff != 0.0) {
        // A single entry for a genuine quartic is a merged double root.
        if (roots.empty() || roots.front().multiplicity == 2) return std::nullopt;
    }
    if (branch < 0 || static_cast<std::size_t>(branch) >= roots.size()) return std::nullopt;
    const auto& root = roots[static_cast<std::size_t>(branch)];
    if (root.multiplicity == 2) return std::nullopt;
    return root.value;
}

double local_slope(const QuarticFamily& family, double s, double p) {
    const double h = 1e-6 * std::max(1.0, std::abs(s));
    const double fs = (family(s + h)(p) - family(s - h)(p)) / (2.0 * h);
    const double fp = family(s).derivative(p);
    if (fp == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(fs / fp);
}

}  // namespace

RootBranch track_root(const QuarticFamily& family, double s_begin, double s_end, double seed_root,
                      const TrackOptions& options) {
    if (options.n_samples < 2) throw ValidationError("track_root: need at least two samples");
    const auto q0 = family(s_begin);
    if (!(std::abs(q0(seed_root)) <= 1e2 * RapmQuartic::residual_tolerance(seed_root))) {
        throw ValidationError("track_root: seed is not a root of the family at the start of the range");
    }
    const auto branch = branch_of(q0, seed_root);
    if (!branch) throw ValidationError("track_root: family has no real root at the start of the range");

    RootBranch out;
    out.branch_id = *branch;
    const auto first = alive_root(family, s_begin, out.branch_id);
    if (!first) throw BranchTerminated("track_root: branch degenerate at range start", s_begin);
    out.samples.emplace_back(s_begin, *first);

    const std::size_t n = options.n_samples;
    for (std::size_t i = 1; i < n; ++i) {
        const double s = s_begin + (s_end - s_begin) * static_cast<double>(i) / static_cast<double>(n - 1);
        const auto [s_prev, p_prev] = out.samples.back();
        const auto p = alive_root(family, s, out.branch_id);
        if (!p) {
            // Bisect between the last live sample and s for the termination point.
            double good = s_prev;
            double bad = s;
            for (int k = 0; k < 200 && std::abs(bad - good) > 1e-14 * std::max(1.0, std::abs(good)); ++k) {
                const double mid = 0.5 * (good + bad);
                if (alive_root(family, mid, out.branch_id)) good = mid; else bad = mid;
            }
            throw BranchTerminated("track_root: real root vanishes (branch collision)", 0.5 * (good + bad));
        }
        const double jump = std::abs(*p - p_prev);
        const double slope = std::max(local_slope(family, s_prev, p_prev), local_slope(family, s, *p));
        const double allowed = std::max(options.slope_factor * std::abs(s - s_prev) * slope, options.abs_floor);
        if (jump > options.abs_cap || jump > allowed) {
            throw BranchTerminated("track_root: continuity threshold exceeded", s);
        }
        out.samples.emplace_back(s, *p);
    }
    return out;
}

std::string to_csv(const RootBranch& branch) {
    std::ostringstream os;
    os << "s,root\n";
    char buf[64];
    for (const auto& [s, p] : branch.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s, p);
        os << buf;
    }
    return os.str();
}

}  // namespace rapm
