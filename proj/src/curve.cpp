// SPDX-License-Identifier: MIT
#include "rapm/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rapm/error.hpp"

namespace rapm {

void ParametricCurve::validate() const {
    const std::size_t n = theta.size();
    if (n < 2) throw ValidationError("ParametricCurve: need at least two samples");
    if (z.size() != n || w.size() != n) throw ValidationError("ParametricCurve: array lengths differ");
    if (!w_z.empty() && w_z.size() != n) throw ValidationError("ParametricCurve: slope array length differs");
    const bool increasing = theta[1] > theta[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(theta[i]) || !std::isfinite(z[i]) || !std::isfinite(w[i])) {
            throw ValidationError("ParametricCurve: non-finite sample");
        }
        if (i > 0 && ((theta[i] > theta[i - 1]) != increasing || theta[i] == theta[i - 1])) {
            throw ValidationError("ParametricCurve: theta must be strictly monotone");
        }
    }
}

std::string to_csv(const ParametricCurve& curve) {
    std::ostringstream os;
    os << "theta,z,w\n";
    char buf[96];
    for (std::size_t i = 0; i < curve.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", curve.theta[i], curve.z[i], curve.w[i]);
        os << buf;
    }
    return os.str();
}

CurveInterpolant::CurveInterpolant(ParametricCurve curve) : curve_(std::move(curve)) {
    curve_.validate();
    const auto& z = curve_.z;
    const auto& w = curve_.w;
    const std::size_t n = z.size();

    // Split at reversals of z; a node where z turns belongs to both segments.
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (z[i] == z[i - 1]) {
            throw ValidationError("CurveInterpolant: repeated z value at node " + std::to_string(i));
        }
        const bool inc = z[i] > z[i - 1];
        const bool seg_inc = z[start + 1] > z[start];
        if (i > start + 1 && inc != seg_inc) {
            segments_.push_back({start, i - 1, seg_inc});
            start = i - 1;
        }
    }
    segments_.push_back({start, n - 1, z[start + 1] > z[start]});

    if (!curve_.w_z.empty()) {
        slopes_ = curve_.w_z;
    } else {
        // Three-point slopes on the non-uniform z grid, one-sided at the ends.
        slopes_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == 0) {
                slopes_[i] = (w[1] - w[0]) / (z[1] - z[0]);
            } else if (i == n - 1) {
                slopes_[i] = (w[i] - w[i - 1]) / (z[i] - z[i - 1]);
            } else {
                const double hm = z[i] - z[i - 1];
                const double hp = z[i + 1] - z[i];
                slopes_[i] = (-hp / (hm * (hm + hp))) * w[i - 1] + ((hp - hm) / (hm * hp)) * w[i] +
                             (hm / (hp * (hm + hp))) * w[i + 1];
            }
        }
    }
}

std::pair<double, double> CurveInterpolant::z_range(std::size_t segment) const {
    if (segment >= segments_.size()) throw ValidationError("CurveInterpolant: no such segment");
    const auto& s = segments_[segment];
    const double a = curve_.z[s.first];
    const double b = curve_.z[s.last];
    return {std::min(a, b), std::max(a, b)};
}

bool CurveInterpolant::contains(double z, std::size_t segment) const {
    const auto [lo, hi] = z_range(segment);
    return z >= lo && z <= hi;
}

std::size_t CurveInterpolant::locate(double zq, std::size_t segment) const {
    if (!contains(zq, segment)) {
        const auto [lo, hi] = z_range(segment);
        throw DomainError("z = " + std::to_string(zq) + " outside curve support [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
    }
    const auto& s = segments_[segment];
    const auto& z = curve_.z;
    std::size_t lo = s.first;
    std::size_t hi = s.last;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        const bool right = s.increasing ? (zq >= z[mid]) : (zq <= z[mid]);
        if (right) lo = mid; else hi = mid;
    }
    return lo;
}

double CurveInterpolant::w(double zq, std::size_t segment) const {
    const std::size_t lo = locate(zq, segment);
    const std::size_t hi = lo + 1;
    const double h = curve_.z[hi] - curve_.z[lo];
    const double t = (zq - curve_.z[lo]) / h;
    if (t == 0.0) return curve_.w[lo];
    if (t == 1.0) return curve_.w[hi];
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * curve_.w[lo] + h10 * h * slopes_[lo] + h01 * curve_.w[hi] + h11 * h * slopes_[hi];
}

CurveInterpolant::Derivatives CurveInterpolant::derivatives(double zq, std::size_t segment) const {
    const std::size_t lo = locate(zq, segment);
    const std::size_t hi = lo + 1;
    const double h = curve_.z[hi] - curve_.z[lo];
    const double t = (zq - curve_.z[lo]) / h;
    const double w0 = curve_.w[lo], w1 = curve_.w[hi];
    const double m0 = slopes_[lo] * h, m1 = slopes_[hi] * h;
    const double t2 = t * t;
    Derivatives d;
    d.w = w(zq, segment);
    d.w_z = ((6.0 * t2 - 6.0 * t) * w0 + (3.0 * t2 - 4.0 * t + 1.0) * m0 + (-6.0 * t2 + 6.0 * t) * w1 +
             (3.0 * t2 - 2.0 * t) * m1) / h;
    d.w_zz = ((12.0 * t - 6.0) * w0 + (6.0 * t - 4.0) * m0 + (-12.0 * t + 6.0) * w1 + (6.0 * t - 2.0) * m1) /
             (h * h);
    return d;
}

}  // namespace rapm
