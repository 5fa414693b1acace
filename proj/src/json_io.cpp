#include "symrig/json_io.hpp"

#include <map>

namespace symrig::io {

namespace {

const std::map<std::string, GroupKind>& kind_names() {
  static const std::map<std::string, GroupKind> names = {
      {"Cs_containing", GroupKind::Cs_containing},
      {"Cs_horizontal", GroupKind::Cs_horizontal},
      {"Cm", GroupKind::Cm},
      {"C2_perp", GroupKind::C2_perp},
      {"Ci", GroupKind::Ci},
      {"Cmh", GroupKind::Cmh},
      {"S2m", GroupKind::S2m},
      {"Cmv", GroupKind::Cmv},
      {"Dm", GroupKind::Dm},
  };
  return names;
}

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name))
    throw parse_error(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw parse_error(std::string("field '") + name + "': " + e.what());
  }
}

} // namespace

json to_json(const GroupSpec& spec) {
  return json{{"kind", symrig::to_string(spec.kind)}, {"m", spec.m}, {"angle", spec.angle}};
}

GroupSpec group_spec_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("group spec must be an object");
  const auto kind = field<std::string>(j, "kind");
  const auto it = kind_names().find(kind);
  if (it == kind_names().end()) throw parse_error("unknown group kind '" + kind + "'");
  GroupSpec spec;
  spec.kind = it->second;
  spec.m = j.contains("m") ? field<int>(j, "m") : 1;
  spec.angle = j.contains("angle") ? field<double>(j, "angle") : 0.0;
  if (spec.m < 1) throw parse_error("group parameter m must be >= 1");
  return spec;
}

GroupSpec group_spec_from_string(const std::string& text) {
  std::string kind = text;
  std::string arg;
  if (auto pos = text.find(':'); pos != std::string::npos) {
    kind = text.substr(0, pos);
    arg = text.substr(pos + 1);
  }
  const auto it = kind_names().find(kind);
  if (it == kind_names().end()) throw parse_error("unknown group '" + text + "'");
  GroupSpec spec;
  spec.kind = it->second;
  switch (spec.kind) {
    case GroupKind::Cm:
    case GroupKind::Cmh:
    case GroupKind::S2m:
    case GroupKind::Cmv:
    case GroupKind::Dm:
      if (arg.empty()) throw parse_error("group '" + kind + "' needs a parameter, e.g. Cm:3");
      spec.m = std::stoi(arg);
      break;
    case GroupKind::Cs_containing:
    case GroupKind::C2_perp:
      if (!arg.empty()) spec.angle = std::stod(arg);
      break;
    default:
      if (!arg.empty()) throw parse_error("group '" + kind + "' takes no parameter");
      break;
  }
  if (spec.m < 1) throw parse_error("group parameter m must be >= 1");
  return spec;
}

SurfaceKind surface_from_string(const std::string& text) {
  if (text == "sphere") return SurfaceKind::Sphere;
  if (text == "cylinder") return SurfaceKind::Cylinder;
  if (text == "cone") return SurfaceKind::Cone;
  throw parse_error("unknown surface '" + text + "'");
}

json to_json(const GainGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back(json{{"tail", e.tail}, {"head", e.head}, {"gain", e.gain}});
  return json{{"group", to_json(g.group().spec())},
              {"vertices", g.vertex_count()},
              {"edges", edges}};
}

GainGraph gain_graph_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("gain graph file must be a JSON object");
  const GroupSpec spec = group_spec_from_json(
      j.contains("group") ? j.at("group") : throw parse_error("missing field 'group'"));
  const int vertices = field<int>(j, "vertices");
  if (!j.contains("edges") || !j.at("edges").is_array())
    throw parse_error("missing or non-array field 'edges'");
  std::vector<GainEdge> edges;
  int index = 0;
  for (const auto& je : j.at("edges")) {
    if (!je.is_object())
      throw parse_error("edge " + std::to_string(index) + " must be an object");
    try {
      edges.push_back({field<int>(je, "tail"), field<int>(je, "head"), field<int>(je, "gain")});
    } catch (const parse_error& e) {
      throw parse_error("edge " + std::to_string(index) + ": " + e.what());
    }
    ++index;
  }
  try {
    return GainGraph(make_group(spec), vertices, std::move(edges));
  } catch (const error& e) {
    throw parse_error(std::string("invalid gain graph: ") + e.what());
  }
}

json to_json(const CountSpec& spec) { return symrig::to_string(spec); }

CountSpec parse_count(const std::string& text, std::optional<SurfaceKind> surface,
                      const GroupSpec* group) {
  if (text == "auto") {
    if (!surface || !group)
      throw parse_error("count 'auto' needs a surface and a group");
    return maxwell_count(*surface, *group);
  }
  if (text == "2,3,1i" || text == "sphere_i") return CountSpec::sphere_i();
  if (text == "2,2,1r" || text == "cylinder_r") return CountSpec::cylinder_r();
  if (text == "subgroup" || text == "subgroup_general") {
    if (!surface) throw parse_error("count 'subgroup' needs a surface");
    return CountSpec::subgroup_general(*surface);
  }
  int k, l, m;
  if (std::sscanf(text.c_str(), "%d,%d,%d", &k, &l, &m) != 3)
    throw parse_error("count must be 'k,l,m', 'auto', '2,3,1i', '2,2,1r' or 'subgroup'");
  try {
    return CountSpec::uniform(k, l, m);
  } catch (const invalid_spec& e) {
    throw parse_error(e.what());
  }
}

json to_json(const Violation& v) {
  const char* clause = v.clause == Violation::Clause::General
                           ? "general"
                           : v.clause == Violation::Clause::Balanced ? "balanced" : "subgroup";
  json out{{"edges", v.edges},
           {"vertex_support_size", v.vertex_support_size},
           {"bound", v.bound_used},
           {"clause", clause}};
  if (!v.subgroup.empty()) out["subgroup"] = v.subgroup;
  return out;
}

json to_json(const RankReport& r) {
  return json{{"rows", r.rows},
              {"cols", r.cols},
              {"rank", r.rank},
              {"nullity", r.nullity},
              {"sigma_min_kept", r.sigma_min_kept},
              {"sigma_max_dropped", r.sigma_max_dropped},
              {"tolerance", r.tolerance},
              {"gap_ratio", r.gap_ratio},
              {"trials", r.trials},
              {"ill_conditioned", r.ill_conditioned}};
}

json to_json(const CoverGraph& c) {
  json edges = json::array();
  for (auto [u, v] : c.edges()) edges.push_back(json::array({u, v}));
  json labels = json::array();
  for (int id = 0; id < c.vertex_count(); ++id) {
    auto [g, v] = c.vertex_label(id);
    labels.push_back(json::array({g, v}));
  }
  return json{{"vertices", c.vertex_count()},
              {"quotient_vertices", c.quotient_vertex_count()},
              {"edges", edges},
              {"vertex_labels", labels}};
}

namespace {

const char* move_kind_name(Move::Kind k) {
  switch (k) {
    case Move::Kind::H1a: return "H1a";
    case Move::Kind::H1b: return "H1b";
    case Move::Kind::H1c: return "H1c";
    case Move::Kind::H2a: return "H2a";
    case Move::Kind::H2b: return "H2b";
    case Move::Kind::H2c: return "H2c";
    case Move::Kind::H2d: return "H2d";
    case Move::Kind::VertexToK4: return "vertex_to_k4";
    case Move::Kind::VertexTo4Cycle: return "vertex_to_4cycle";
    case Move::Kind::EdgeJoin: return "edge_join";
  }
  return "?";
}

Move::Kind move_kind_from_name(const std::string& name) {
  static const std::map<std::string, Move::Kind> names = {
      {"H1a", Move::Kind::H1a},       {"H1b", Move::Kind::H1b},
      {"H1c", Move::Kind::H1c},       {"H2a", Move::Kind::H2a},
      {"H2b", Move::Kind::H2b},       {"H2c", Move::Kind::H2c},
      {"H2d", Move::Kind::H2d},       {"vertex_to_k4", Move::Kind::VertexToK4},
      {"vertex_to_4cycle", Move::Kind::VertexTo4Cycle},
      {"edge_join", Move::Kind::EdgeJoin}};
  const auto it = names.find(name);
  if (it == names.end()) throw parse_error("unknown move type '" + name + "'");
  return it->second;
}

const char* base_kind_name(MoveScript::BaseKind k) {
  switch (k) {
    case MoveScript::BaseKind::K1: return "K1";
    case MoveScript::BaseKind::K2: return "K2";
    case MoveScript::BaseKind::K1_loop: return "K1_loop";
    case MoveScript::BaseKind::K4_plus_e: return "K4_plus_e";
    case MoveScript::BaseKind::K5_minus_e: return "K5_minus_e";
  }
  return "?";
}

MoveScript::BaseKind base_kind_from_name(const std::string& name) {
  static const std::map<std::string, MoveScript::BaseKind> names = {
      {"K1", MoveScript::BaseKind::K1},
      {"K2", MoveScript::BaseKind::K2},
      {"K1_loop", MoveScript::BaseKind::K1_loop},
      {"K4_plus_e", MoveScript::BaseKind::K4_plus_e},
      {"K5_minus_e", MoveScript::BaseKind::K5_minus_e}};
  const auto it = names.find(name);
  if (it == names.end()) throw parse_error("unknown base kind '" + name + "'");
  return it->second;
}

json edges_to_json(const std::vector<GainEdge>& edges) {
  json out = json::array();
  for (const auto& e : edges)
    out.push_back(json{{"tail", e.tail}, {"head", e.head}, {"gain", e.gain}});
  return out;
}

std::vector<GainEdge> edges_from_json(const json& j) {
  std::vector<GainEdge> out;
  for (const auto& je : j)
    out.push_back({field<int>(je, "tail"), field<int>(je, "head"), field<int>(je, "gain")});
  return out;
}

json move_to_json(const Move& m) {
  json j{{"type", move_kind_name(m.kind)}};
  j["added"] = edges_to_json(m.added);
  if (!m.new_edges.empty()) j["slots"] = m.new_edges;
  switch (m.kind) {
    case Move::Kind::H1a:
    case Move::Kind::H1b:
    case Move::Kind::H1c:
      if (m.new_vertex >= 0) j["vertex"] = m.new_vertex;
      break;
    case Move::Kind::H2a:
    case Move::Kind::H2b:
    case Move::Kind::H2c:
    case Move::Kind::H2d:
      j["edge"] = m.edge;
      if (m.new_vertex >= 0) j["vertex"] = m.new_vertex;
      break;
    case Move::Kind::VertexToK4:
      j["corners"] = m.corners;
      j["reattach"] = m.reattach;
      if (!m.unswitch.empty()) j["unswitch"] = m.unswitch;
      break;
    case Move::Kind::VertexTo4Cycle:
      j["v"] = m.v;
      j["edge_a"] = m.edge_a;
      j["edge_b"] = m.edge_b;
      j["reattach"] = m.reattach;
      if (m.new_vertex >= 0) j["vertex"] = m.new_vertex;
      break;
    case Move::Kind::EdgeJoin:
      j["joined"] = to_json(*m.joined);
      if (!m.right_vertices.empty()) j["right_vertices"] = m.right_vertices;
      if (!m.right_edges.empty()) j["right_edges"] = m.right_edges;
      break;
  }
  return j;
}

Move move_from_json(const json& j) {
  Move m;
  m.kind = move_kind_from_name(field<std::string>(j, "type"));
  if (j.contains("added")) m.added = edges_from_json(j.at("added"));
  if (j.contains("slots")) m.new_edges = field<std::vector<int>>(j, "slots");
  if (j.contains("vertex")) m.new_vertex = field<int>(j, "vertex");
  switch (m.kind) {
    case Move::Kind::H1a:
    case Move::Kind::H1b:
    case Move::Kind::H1c:
      break;
    case Move::Kind::H2a:
    case Move::Kind::H2b:
    case Move::Kind::H2c:
    case Move::Kind::H2d:
      m.edge = field<int>(j, "edge");
      break;
    case Move::Kind::VertexToK4:
      m.corners = field<std::vector<int>>(j, "corners");
      m.reattach = field<std::vector<int>>(j, "reattach");
      if (j.contains("unswitch")) m.unswitch = field<std::vector<int>>(j, "unswitch");
      break;
    case Move::Kind::VertexTo4Cycle:
      m.v = field<int>(j, "v");
      m.edge_a = field<int>(j, "edge_a");
      m.edge_b = field<int>(j, "edge_b");
      m.reattach = field<std::vector<int>>(j, "reattach");
      break;
    case Move::Kind::EdgeJoin:
      if (!j.contains("joined")) throw parse_error("edge_join move needs 'joined'");
      m.joined = std::make_shared<const MoveScript>(move_script_from_json(j.at("joined")));
      if (j.contains("right_vertices"))
        m.right_vertices = field<std::vector<int>>(j, "right_vertices");
      if (j.contains("right_edges")) m.right_edges = field<std::vector<int>>(j, "right_edges");
      break;
  }
  return m;
}

} // namespace

json to_json(const MoveScript& script) {
  json moves = json::array();
  for (const auto& m : script.moves) moves.push_back(move_to_json(m));
  return json{{"base_kind", base_kind_name(script.base_kind)},
              {"base", to_json(*script.base)},
              {"moves", moves}};
}

MoveScript move_script_from_json(const json& j) {
  MoveScript script;
  script.base_kind = base_kind_from_name(field<std::string>(j, "base_kind"));
  if (!j.contains("base")) throw parse_error("script needs a 'base' graph");
  script.base = std::make_shared<const GainGraph>(gain_graph_from_json(j.at("base")));
  if (!j.contains("moves") || !j.at("moves").is_array())
    throw parse_error("script needs a 'moves' array");
  for (const auto& jm : j.at("moves")) script.moves.push_back(move_from_json(jm));
  return script;
}

json points_to_json(const std::vector<Eigen::Vector3d>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(json::array({p.x(), p.y(), p.z()}));
  return out;
}

std::vector<Eigen::Vector3d> points_from_json(const json& j) {
  if (!j.is_array()) throw parse_error("'points' must be an array of [x,y,z]");
  std::vector<Eigen::Vector3d> out;
  for (const auto& jp : j) {
    if (!jp.is_array() || jp.size() != 3) throw parse_error("each point must be [x,y,z]");
    out.emplace_back(jp[0].get<double>(), jp[1].get<double>(), jp[2].get<double>());
  }
  return out;
}

json to_json(const SymmetricFramework& fw) {
  return json{{"graph", to_json(fw.graph)},
              {"surface", symrig::to_string(fw.surface)},
              {"points", points_to_json(fw.points)}};
}

SymmetricFramework framework_from_json(const json& j) {
  SymmetricFramework fw{gain_graph_from_json(j.at("graph")),
                        surface_from_string(field<std::string>(j, "surface")),
                        points_from_json(j.at("points"))};
  return fw;
}

} // namespace symrig::io
