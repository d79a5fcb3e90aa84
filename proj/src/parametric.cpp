// SPDX-License-Identifier: MIT
#include "rapm/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"

namespace rapm {

RapmQuartic parametric_quartic(const ModelParams& p, const ParametricReduction& red, double theta) {
    return {p.mu(), 2.0 * (red.r * red.zeta + (red.r - red.kappa) * theta) / p.sigma2()};
}

namespace {

// First zero of D on the sample path walking from index `from` in direction `step`;
// located by bisection between the bracketing samples.
std::optional<double> first_zero(const std::function<double(double)>& D, const std::vector<double>& theta,
                                 std::size_t from, int step) {
    double prev_th = theta[from];
    double prev = D(prev_th);
    for (std::ptrdiff_t i = std::ptrdiff_t(from) + step; i >= 0 && i < std::ptrdiff_t(theta.size()); i += step) {
        const double th = theta[std::size_t(i)];
        const double cur = D(th);
        if (cur == 0.0) return th;
        if ((cur > 0.0) != (prev > 0.0)) {
            double lo = prev_th, hi = th, flo = prev;
            for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = D(mid);
                if ((fm > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        prev_th = th;
        prev = cur;
    }
    return std::nullopt;
}

// Integral over [a, b] cut at points approaching the nearest singularity geometrically,
// so every piece spans at most a factor 2 in distance to it.
QuadratureResult integrate_graded(const std::function<double(double)>& f, double a, double b,
                                  const std::vector<double>& singular, const QuadratureOptions& opts) {
    const double lo = std::min(a, b), hi = std::max(a, b);
    std::vector<double> cuts{lo, hi};
    for (const double s : singular) {
        const double near = s <= lo ? lo - s : s - hi;
        if (!(near > 0.0)) continue;
        const double sign = s <= lo ? 1.0 : -1.0;
        for (double d = 2.0 * near; d < near + (hi - lo); d *= 2.0) cuts.push_back(s + sign * d);
    }
    std::sort(cuts.begin(), cuts.end());
    QuadratureResult out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto piece = integrate(f, cuts[i], cuts[i + 1], opts);
        out.value += piece.value;
        out.error += piece.error;
    }
    if (a > b) out.value = -out.value;
    return out;
}

}  // namespace

CurveBuild build_parametric_curve(const ModelParams& p, const ParametricReduction& red, int branch,
                                  double theta_begin, double theta_end, double theta0, double z0,
                                  const CurveBuildOptions& options) {
    if (!(theta_end > theta_begin)) throw ValidationError("theta range must be increasing");
    if (!(theta0 >= theta_begin && theta0 <= theta_end)) throw ValidationError("anchor theta0 outside theta range");
    if (!(z0 > 0.0)) throw ValidationError("anchor z0 must be positive");
    if (options.n_samples < 3) throw ValidationError("need at least 3 samples");

    const auto family = [&](double th) { return parametric_quartic(p, red, th); };
    const auto seed = root_on_branch(family(theta_begin), branch);
    if (!seed) throw ValidationError("no real root for this branch index");

    TrackOptions track;
    track.n_samples = std::max<std::size_t>(options.n_samples, 201);
    const RootBranch tracked = track_root(family, theta_begin, theta_end, seed->value, track);

    const auto k_of = [&](double th) {
        const auto root = root_on_branch(family(th), branch);
        if (!root) throw BranchTerminated("branch terminated at theta=" + std::to_string(th), th);
        return root->value;
    };
    const auto denom = [&](double th) {
        const double k = k_of(th);
        return k * k * k - th - red.zeta;
    };

    if (denom(theta0) == 0.0) throw ValidationError("denominator singularity at the anchor theta0");

    // Search for the nearest denominator zeros on either side of theta0.
    std::vector<double> scan;
    scan.reserve(tracked.samples.size() + 1);
    for (const auto& s : tracked.samples) scan.push_back(s.first);
    scan.push_back(theta0);
    std::sort(scan.begin(), scan.end());
    scan.erase(std::unique(scan.begin(), scan.end()), scan.end());
    const std::size_t anchor_idx = std::size_t(std::find(scan.begin(), scan.end(), theta0) - scan.begin());

    CurveBuild out;
    double lo = theta_begin, hi = theta_end;
    if (auto z = first_zero(denom, scan, anchor_idx, +1)) {
        out.truncated_at.push_back(*z);
        hi = *z - options.singularity_margin * std::max(1.0, std::abs(*z));
    }
    if (auto z = first_zero(denom, scan, anchor_idx, -1)) {
        out.truncated_at.push_back(*z);
        lo = *z + options.singularity_margin * std::max(1.0, std::abs(*z));
    }
    if (!(hi > lo) || theta0 < lo || theta0 > hi) {
        throw ValidationError("denominator singularity leaves no usable range around the anchor");
    }

    auto& c = out.curve;
    c.theta = linspace(lo, hi, options.n_samples);
    const std::size_t n = c.theta.size();
    c.z.resize(n);
    c.w.resize(n);
    c.w_z.resize(n);
    out.k.resize(n);

    const auto inv_d = [&](double th) { return 1.0 / denom(th); };
    const auto th_d = [&](double th) { return th / denom(th); };

    // Cumulative integrals from theta0 outward.
    std::vector<double> lnz(n), w(n);
    const std::size_t right = std::size_t(std::lower_bound(c.theta.begin(), c.theta.end(), theta0) - c.theta.begin());
    double prev = theta0, acc_l = 0.0, acc_w = 0.0;
    for (std::size_t i = right; i < n; ++i) {
        const auto a = integrate_graded(inv_d, prev, c.theta[i], out.truncated_at, options.quadrature);
        const auto b = integrate_graded(th_d, prev, c.theta[i], out.truncated_at, options.quadrature);
        acc_l += a.value;
        acc_w += b.value;
        out.quadrature_error += a.error + b.error;
        lnz[i] = acc_l;
        w[i] = acc_w;
        prev = c.theta[i];
    }
    prev = theta0;
    acc_l = acc_w = 0.0;
    for (std::size_t i = right; i-- > 0;) {
        const auto a = integrate_graded(inv_d, prev, c.theta[i], out.truncated_at, options.quadrature);
        const auto b = integrate_graded(th_d, prev, c.theta[i], out.truncated_at, options.quadrature);
        acc_l += a.value;
        acc_w += b.value;
        out.quadrature_error += a.error + b.error;
        lnz[i] = acc_l;
        w[i] = acc_w;
        prev = c.theta[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        c.z[i] = z0 * std::exp(lnz[i]);
        c.w[i] = w[i];
        c.w_z[i] = c.theta[i] / c.z[i];
        out.k[i] = k_of(c.theta[i]);
        if (!(c.z[i] > 0.0) || !std::isfinite(c.z[i])) {
            throw NumericalError("parametric curve: z left the positive reals at theta=" + std::to_string(c.theta[i]));
        }
    }
    return out;
}

ParametricEvaluator::ParametricEvaluator(const ModelParams& p, const ParametricReduction& red, int branch,
                                         const CurveBuild& build, const QuadratureOptions& quadrature)
    : params_(p), red_(red), branch_(branch), theta_(build.curve.theta), w_(build.curve.w),
      singular_(build.truncated_at), quadrature_(quadrature) {
    build.curve.validate();
    lnz_.resize(theta_.size());
    for (std::size_t i = 0; i < theta_.size(); ++i) lnz_[i] = std::log(build.curve.z[i]);
    ascending_ = lnz_.back() > lnz_.front();
    for (std::size_t i = 1; i < lnz_.size(); ++i) {
        if ((lnz_[i] > lnz_[i - 1]) != ascending_) throw ValidationError("ParametricEvaluator: z not monotone in theta");
    }
    z_min_ = std::exp(std::min(lnz_.front(), lnz_.back()));
    z_max_ = std::exp(std::max(lnz_.front(), lnz_.back()));
}

double ParametricEvaluator::k_of(double theta) const {
    const auto root = root_on_branch(parametric_quartic(params_, red_, theta), branch_);
    if (!root) throw BranchTerminated("branch terminated at theta=" + std::to_string(theta), theta);
    return root->value;
}

double ParametricEvaluator::denom(double theta) const {
    const double k = k_of(theta);
    return k * k * k - theta - red_.zeta;
}

ParametricEvaluator::Point ParametricEvaluator::at(double z) const {
    if (!(z > 0.0) || !contains(z)) throw DomainError("z outside curve support");
    const double target = std::log(z);
    // Node interval [i, i+1] whose ln z values bracket the target.
    const std::size_t n = lnz_.size();
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if ((lnz_[mid] <= target) == ascending_) lo = mid; else hi = mid;
    }
    const std::size_t i = (std::abs(lnz_[lo] - target) <= std::abs(lnz_[hi] - target)) ? lo : hi;
    const auto inv_d = [this](double th) { return 1.0 / denom(th); };
    const auto th_d = [this](double th) { return th / denom(th); };

    double theta = theta_[i];
    if (lnz_[i] != target) {
        double a = theta_[lo], b = theta_[hi];
        const auto g = [&](double th) {
            return lnz_[i] + integrate_graded(inv_d, theta_[i], th, singular_, quadrature_).value - target;
        };
        // g is monotone on [a, b]; ga, gb bracket its zero.
        double ga = g(a);
        theta = theta_[lo] + (theta_[hi] - theta_[lo]) * (target - lnz_[lo]) / (lnz_[hi] - lnz_[lo]);
        for (int it = 0; it < 60; ++it) {
            const double gt = g(theta);
            if (gt == 0.0) break;
            if ((gt > 0.0) == (ga > 0.0)) {
                a = theta;
                ga = gt;
            } else {
                b = theta;
            }
            double next = theta - gt * denom(theta);
            if (!(next > std::min(a, b) && next < std::max(a, b))) next = 0.5 * (a + b);
            const double step = std::abs(next - theta);
            theta = next;
            if (step <= 1e-15 * std::max(1.0, std::abs(theta))) break;
        }
    }
    Point pt;
    pt.theta = theta;
    pt.k = k_of(theta);
    pt.w = w_[i] + integrate_graded(th_d, theta_[i], theta, singular_, quadrature_).value;
    pt.w_z = theta / z;
    pt.w_zz = (pt.k * pt.k * pt.k - 2.0 * theta - red_.zeta) / (z * z);
    return pt;
}

SurfaceJet parametric_jet(const ParametricEvaluator& ev, double S, double t) {
    if (!(S > 0.0)) throw ValidationError("S must be positive");
    const double kappa = ev.reduction().kappa;
    const double zeta = ev.reduction().zeta;
    const double z = S * std::exp(-kappa * t);
    const auto pt = ev.at(z);
    const double L = std::log(S);
    return {S * pt.w + zeta * S * L, -kappa * S * z * pt.w_z, pt.w + z * pt.w_z + zeta * (L + 1.0),
            (z / S) * (2.0 * pt.w_z + z * pt.w_zz) + zeta / S};
}

}  // namespace rapm
