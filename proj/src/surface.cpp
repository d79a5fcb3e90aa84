// SPDX-License-Identifier: MIT
#include "rapm/surface.hpp"

#include <cmath>
#include <string>

#include "rapm/error.hpp"

namespace rapm {

namespace {

std::string point_str(double S, double t) {
    return "(S=" + std::to_string(S) + ", t=" + std::to_string(t) + ")";
}

}  // namespace

SurfaceFn::SurfaceFn(ValueFn value, Support support, JetFn jet)
    : value_(std::move(value)), support_(support), jet_(std::move(jet)) {
    if (!value_) throw ValidationError("SurfaceFn: empty value function");
    if (!(support_.S_min > 0.0) || !(support_.S_max > support_.S_min) ||
        !(support_.t_max >= support_.t_min) || !std::isfinite(support_.S_max) ||
        !std::isfinite(support_.t_min) || !std::isfinite(support_.t_max)) {
        throw ValidationError("SurfaceFn: invalid support rectangle");
    }
}

double SurfaceFn::operator()(double S, double t) const {
    if (!support_.contains(S, t)) throw DomainError("point " + point_str(S, t) + " outside surface support");
    return value_(S, t);
}

SurfaceJet SurfaceFn::jet(double S, double t) const {
    if (!jet_) throw ValidationError("SurfaceFn: no analytic derivatives attached");
    if (!support_.contains(S, t)) throw DomainError("point " + point_str(S, t) + " outside surface support");
    return jet_(S, t);
}

SurfaceFn SurfaceFn::restricted(const Support& s) const {
    if (s.S_min < support_.S_min || s.S_max > support_.S_max || s.t_min < support_.t_min ||
        s.t_max > support_.t_max) {
        throw DomainError("SurfaceFn: restriction leaves the support");
    }
    return {value_, s, jet_};
}

}  // namespace rapm
