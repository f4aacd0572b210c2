#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "oge/einstein.hpp"

namespace oge {

using ordered_json = nlohmann::ordered_json;

/// Error in a scene document; names the offending field.
struct SceneError : std::runtime_error {
    std::string field;
    SceneError(std::string f, const std::string& msg)
        : std::runtime_error("scene field '" + f + "': " + msg), field(std::move(f)) {}
};

/// Parses the JSON scene document. Unspecified k/H/F entries are zero,
/// antisymmetry is completed from the given representatives, duplicate index
/// tuples are rejected. On the exact backend, number literals are read as
/// exact rationals and {"sqrt": m, "coef": q} denotes q*sqrt(m).
template <class S>
Scene<S> parse_scene(const std::string& text);

template <class S>
ordered_json emit_scene(const Scene<S>& sc);

/// Exact rational from a JSON number node (integer or decimal literal).
Rat rat_from_json(const nlohmann::json& j);

/// Residual report with the paper's (i, a) index labels.
template <class S>
ordered_json residual_report(const Scene<S>& sc, const EinsteinResidual<S>& r,
                             const std::string& backend, double tol, bool with_ricci);

template <class S>
std::string residual_csv(const EinsteinResidual<S>& r);

}  // namespace oge
