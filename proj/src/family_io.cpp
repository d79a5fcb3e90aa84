// SPDX-License-Identifier: MIT
#include "rapm/family_io.hpp"

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"

namespace rapm {

using nlohmann::json;

void reject_unknown_keys(const json& j, const json& allowed, const std::string& context) {
    if (!j.is_object()) throw ValidationError(context + ": expected a JSON object");
    for (const auto& [k, v] : j.items()) {
        if (!allowed.contains(k)) throw ValidationError(context + ": unknown key '" + k + "'");
    }
}

const ModelParams& FamilyHandle::params() const {
    return std::visit([](const auto& f) -> const ModelParams& { return f.params; }, family);
}

json family_defaults(const std::string& tag) {
    if (tag == "h2" || tag == "h2_0") return {{"tag", tag}, {"phi", 0.0}, {"branch", 0}, {"c1", 0.0}, {"c2", 0.0}};
    // Anchors sit where k^3 - theta - zeta is nonzero on branch 0.
    if (tag == "h3") {
        return {{"tag", tag},         {"a", 1.0},  {"phi", kPi / 3.0},  {"branch", 0}, {"theta_range", {-1.0, 0.0}},
                {"theta0", -1.0},     {"z0", 1.0}, {"n_samples", 201}};
    }
    if (tag == "h3_0") {
        return {{"tag", tag},         {"a", 2.0},  {"phi", kPi / 3.0},  {"branch", 0}, {"theta_range", {0.0, 1.0}},
                {"theta0", 0.0},      {"z0", 1.0}, {"n_samples", 201}};
    }
    if (tag == "h4") {
        return {{"tag", tag},  {"phi", 0.0},          {"eps", 1},
                {"branch", 0}, {"c1", 0.0},           {"c2", 0.0},
                {"z_range", {1.0, 200.0}},           {"variant", "printed_solution"}};
    }
    if (tag == "h4_0") {
        return {{"tag", tag},  {"phi", 0.0},          {"eps", 1},
                {"branch", 0}, {"c1", 0.0},           {"c2", 0.0},
                {"S_range", {1.0, 200.0}},           {"variant", "invariant"}};
    }
    if (tag == "special") {
        return {{"tag", tag},   {"c1", 1.0},   {"c2", 0.0},       {"alpha", 0.0}, {"theta_range", {0.5, 10.0}},
                {"n_samples", 401}, {"variant", "derived"}};
    }
    throw ValidationError("unknown family tag '" + tag + "' (expected h2, h3, h4, special, h2_0, h3_0, h4_0)");
}

namespace {

std::pair<double, double> range_of(const json& j, const char* key) {
    const auto& r = j.at(key);
    if (!r.is_array() || r.size() != 2) throw ValidationError(std::string(key) + " must be a two-element array");
    return {r[0].get<double>(), r[1].get<double>()};
}

H4Variant h4_variant(const std::string& s) {
    if (s == "printed_solution") return H4Variant::printed_solution;
    if (s == "invariant_printed_ode") return H4Variant::invariant_printed_ode;
    if (s == "invariant_derived_ode") return H4Variant::invariant_derived_ode;
    throw ValidationError("unknown h4 variant '" + s + "'");
}

H40Variant h40_variant(const std::string& s) {
    if (s == "invariant") return H40Variant::invariant;
    if (s == "printed_solution") return H40Variant::printed_solution;
    throw ValidationError("unknown h4_0 variant '" + s + "'");
}

SpecialVariant special_variant(const std::string& s) {
    if (s == "derived") return SpecialVariant::derived;
    if (s == "printed") return SpecialVariant::printed;
    throw ValidationError("unknown special variant '" + s + "'");
}

}  // namespace

FamilyHandle build_family(const ModelParams& p, const json& spec) {
    if (!spec.is_object() || !spec.contains("tag")) throw ValidationError("family: missing 'tag'");
    const std::string tag = spec.at("tag").get<std::string>();
    json s = family_defaults(tag);
    reject_unknown_keys(spec, s, "family '" + tag + "'");
    for (const auto& [k, v] : spec.items()) s[k] = v;

    try {
        if (tag == "h2") {
            return {h2_build(p, s["phi"], s["branch"], s["c1"], s["c2"]), s};
        }
        if (tag == "h2_0") {
            return {h2_0_build(p, s["phi"], s["branch"], s["c1"], s["c2"]), s};
        }
        if (tag == "h3" || tag == "h3_0") {
            const auto [lo, hi] = range_of(s, "theta_range");
            CurveBuildOptions o;
            o.n_samples = s["n_samples"].get<std::size_t>();
            if (tag == "h3") return {h3_build(p, s["a"], s["phi"], s["branch"], lo, hi, s["theta0"], s["z0"], o), s};
            return {h3_0_build(p, s["a"], s["phi"], s["branch"], lo, hi, s["theta0"], s["z0"], o), s};
        }
        if (tag == "h4") {
            const auto [lo, hi] = range_of(s, "z_range");
            return {h4_build(p, s["phi"], s["eps"], s["branch"], s["c1"], s["c2"], lo, hi,
                             h4_variant(s["variant"])),
                    s};
        }
        if (tag == "h4_0") {
            const auto [lo, hi] = range_of(s, "S_range");
            return {h4_0_build(p, s["phi"], s["eps"], s["branch"], s["c1"], s["c2"], lo, hi,
                               h40_variant(s["variant"])),
                    s};
        }
        // special
        const auto [lo, hi] = range_of(s, "theta_range");
        SpecialCurveParams c;
        c.c1 = s["c1"];
        c.c2 = s["c2"];
        c.theta_begin = lo;
        c.theta_end = hi;
        c.n_samples = s["n_samples"].get<std::size_t>();
        c.variant = special_variant(s["variant"]);
        return {special_family_build(p, c, s["alpha"]), s};
    } catch (const json::exception& e) {
        throw ValidationError("family '" + tag + "': bad parameter type (" + std::string(e.what()) + ")");
    }
}

SurfaceFn family_surface(const FamilyHandle& h, const Support& support) {
    return std::visit(
        [&](const auto& f) -> SurfaceFn {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, H2Family>) return h2_surface(f, support);
            else if constexpr (std::is_same_v<T, H3Family>) return h3_surface(f, support);
            else if constexpr (std::is_same_v<T, H4Family>) return h4_surface(f, support);
            else if constexpr (std::is_same_v<T, SpecialFamily>) return special_surface(f, support);
            else if constexpr (std::is_same_v<T, H20Family>) return h2_0_surface(f, support);
            else if constexpr (std::is_same_v<T, H30Family>) return h3_0_surface(f, support);
            else return h4_0_surface(f, support);
        },
        h.family);
}

std::optional<ParametricCurve> family_curve(const FamilyHandle& h) {
    return std::visit(
        [](const auto& f) -> std::optional<ParametricCurve> {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, H3Family> || std::is_same_v<T, H30Family>) return f.curve();
            else if constexpr (std::is_same_v<T, SpecialFamily>) return f.curve;
            else return std::nullopt;
        },
        h.family);
}

json family_to_json(const FamilyHandle& h) {
    json j;
    j["tag"] = h.tag();
    j["model"] = h.params();
    j["spec"] = h.spec;
    json d = json::object();
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, H2Family> || std::is_same_v<T, H20Family>) {
                d["k"] = f.k;
                d["tau"] = f.tau;
            } else if constexpr (std::is_same_v<T, H3Family>) {
                d["gamma"] = f.gamma;
                d["zeta"] = f.zeta;
                d["kappa"] = f.kappa();
                d["truncated_at"] = f.build.truncated_at;
                d["quadrature_error"] = f.build.quadrature_error;
            } else if constexpr (std::is_same_v<T, H30Family>) {
                d["delta"] = f.delta;
                d["zeta"] = f.zeta;
                d["truncated_at"] = f.build.truncated_at;
                d["quadrature_error"] = f.build.quadrature_error;
            } else if constexpr (std::is_same_v<T, H4Family> || std::is_same_v<T, H40Family>) {
                d["tau"] = f.tau;
            } else {
                d["turning_theta"] = special_turning_theta(f.params);
                const auto [lo, hi] = f.interpolant.z_range();
                d["z_range"] = {lo, hi};
            }
        },
        h.family);
    j["derived"] = d;
    if (auto c = family_curve(h)) j["curve"] = {{"theta", c->theta}, {"z", c->z}, {"w", c->w}};
    return j;
}

FamilyHandle family_from_json(const json& j) {
    reject_unknown_keys(j, json{{"tag", 0}, {"model", 0}, {"spec", 0}, {"derived", 0}, {"curve", 0}}, "family json");
    return build_family(model_params_from_json(j.at("model")), j.at("spec"));
}

}  // namespace rapm
