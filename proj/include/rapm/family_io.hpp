// SPDX-License-Identifier: MIT
/**
 * @file family_io.hpp
 * @brief Building invariant families from JSON and serializing them
 *
 * A family spec is a JSON object with a "tag" (h2, h3, h4, special, h2_0,
 * h3_0, h4_0) and the tag's parameters; unknown keys are rejected and
 * omitted keys take documented defaults. The resolved spec, with defaults
 * filled in, is kept with the family so that serialization round-trips.
 */

#pragma once

#include <optional>
#include <string>
#include <variant>

#include "json.hpp"
#include "rapm/curve.hpp"
#include "rapm/model.hpp"
#include "rapm/reductions_r0.hpp"
#include "rapm/reductions_rnz.hpp"
#include "rapm/special_family.hpp"
#include "rapm/surface.hpp"

namespace rapm {

using AnyFamily = std::variant<H2Family, H3Family, H4Family, SpecialFamily, H20Family, H30Family, H40Family>;

struct FamilyHandle {
    AnyFamily family;
    nlohmann::json spec;  ///< resolved spec including defaults
    [[nodiscard]] const ModelParams& params() const;
    [[nodiscard]] std::string tag() const { return spec.at("tag").get<std::string>(); }
};

/// Defaults filled into a spec for `tag`; throws ValidationError for an unknown tag.
[[nodiscard]] nlohmann::json family_defaults(const std::string& tag);

[[nodiscard]] FamilyHandle build_family(const ModelParams& p, const nlohmann::json& spec);

/// Surface on `support`; analytic jets when the family has them.
[[nodiscard]] SurfaceFn family_surface(const FamilyHandle& f, const Support& support);

/// Sampled curve for parametric families.
[[nodiscard]] std::optional<ParametricCurve> family_curve(const FamilyHandle& f);

/// {"tag", "model", "spec", "derived", "curve"?}.
[[nodiscard]] nlohmann::json family_to_json(const FamilyHandle& f);
/// Rebuilds from "model" and "spec"; stored curve samples are not trusted.
[[nodiscard]] FamilyHandle family_from_json(const nlohmann::json& j);

/// Throws ValidationError naming the first key of `j` not present in `allowed`.
void reject_unknown_keys(const nlohmann::json& j, const nlohmann::json& allowed, const std::string& context);

}  // namespace rapm
