// SPDX-License-Identifier: MIT
/**
 * @file curve.hpp
 * @brief Sampled parametric curves (theta, z(theta), w(theta)) and w(z) lookup
 */

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace rapm {

/**
 * Sampled curve theta -> (z, w). `w_z` holds dw/dz at the nodes when the
 * producer knows it exactly; otherwise it may be left empty and slopes are
 * estimated from the samples.
 */
struct ParametricCurve {
    std::vector<double> theta;
    std::vector<double> z;
    std::vector<double> w;
    std::vector<double> w_z;

    /// Lengths equal and >= 2, theta strictly monotone, values finite.
    void validate() const;
    [[nodiscard]] std::size_t size() const noexcept { return theta.size(); }
};

/// "theta,z,w" CSV with 17 significant digits.
[[nodiscard]] std::string to_csv(const ParametricCurve& curve);

/**
 * Single-valued w(z) built from a parametric curve. The curve is split at
 * every reversal of z(theta); each monotone segment is an independent branch
 * and is interpolated with cubic Hermite polynomials.
 */
class CurveInterpolant {
public:
    explicit CurveInterpolant(ParametricCurve curve);

    [[nodiscard]] std::size_t segment_count() const noexcept { return segments_.size(); }
    /// (min z, max z) of a segment.
    [[nodiscard]] std::pair<double, double> z_range(std::size_t segment = 0) const;
    [[nodiscard]] bool contains(double z, std::size_t segment = 0) const;
    /// Throws DomainError outside the segment's z range.
    [[nodiscard]] double w(double z, std::size_t segment = 0) const;

    struct Derivatives {
        double w = 0.0;
        double w_z = 0.0;
        double w_zz = 0.0;  ///< of the interpolating cubic; jumps at nodes
    };
    [[nodiscard]] Derivatives derivatives(double z, std::size_t segment = 0) const;
    [[nodiscard]] const ParametricCurve& curve() const noexcept { return curve_; }

private:
    /// Interval [lo, lo+1] of `segment` containing z; throws DomainError outside.
    [[nodiscard]] std::size_t locate(double z, std::size_t segment) const;

    struct Segment {
        std::size_t first;  // node indices, inclusive
        std::size_t last;
        bool increasing;
    };

    ParametricCurve curve_;
    std::vector<double> slopes_;
    std::vector<Segment> segments_;
};

}  // namespace rapm
