#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "symrig/framework.hpp"
#include "symrig/matrices.hpp"
#include "symrig/moves.hpp"
#include "symrig/sparsity.hpp"

namespace symrig::io {

using json = nlohmann::json;

json to_json(const GroupSpec& spec);
GroupSpec group_spec_from_json(const json& j);

/// Short CLI form: "Ci", "Cm:3", "Cs_containing:1.5708", "S2m:2", ...
GroupSpec group_spec_from_string(const std::string& text);

SurfaceKind surface_from_string(const std::string& text);

json to_json(const GainGraph& g);
GainGraph gain_graph_from_json(const json& j);

json to_json(const CountSpec& spec);

/// "auto" (needs surface and group), "k,l,m", "2,3,1i", "2,2,1r",
/// or "subgroup" (needs surface).
CountSpec parse_count(const std::string& text, std::optional<SurfaceKind> surface,
                      const GroupSpec* group);

json to_json(const Violation& v);
json to_json(const RankReport& r);
json to_json(const CoverGraph& c);

json to_json(const MoveScript& script);
MoveScript move_script_from_json(const json& j);

json points_to_json(const std::vector<Eigen::Vector3d>& pts);
std::vector<Eigen::Vector3d> points_from_json(const json& j);

json to_json(const SymmetricFramework& fw);
SymmetricFramework framework_from_json(const json& j);

} // namespace symrig::io
