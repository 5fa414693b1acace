#include <doctest.h>

#include "symrig/harness.hpp"
#include "symrig/json_io.hpp"

using namespace symrig;
using nlohmann::json;

TEST_CASE("gain graph JSON round trip is byte-stable") {
  const char* text = R"({"edges":[{"gain":0,"head":1,"tail":0},{"gain":1,"head":1,"tail":0}],)"
                     R"("group":{"angle":0.0,"kind":"Ci","m":1},"vertices":2})";
  const GainGraph g = io::gain_graph_from_json(json::parse(text));
  CHECK(io::to_json(g).dump() == text);
  CHECK(io::to_json(io::gain_graph_from_json(io::to_json(g))).dump() == text);
}

TEST_CASE("parse errors carry the failing field") {
  CHECK_THROWS_WITH_AS(io::gain_graph_from_json(json::parse(R"({"vertices":2,"edges":[]})")),
                       doctest::Contains("group"), parse_error);
  CHECK_THROWS_WITH_AS(
      io::gain_graph_from_json(json::parse(
          R"({"group":{"kind":"Ci"},"vertices":2,"edges":[{"tail":0,"head":1}]})")),
      doctest::Contains("edge 0"), parse_error);
  CHECK_THROWS_WITH_AS(io::group_spec_from_json(json::parse(R"({"kind":"Qx"})")),
                       doctest::Contains("Qx"), parse_error);
  // Structurally valid JSON but invalid graph.
  CHECK_THROWS_AS(io::gain_graph_from_json(json::parse(
                      R"({"group":{"kind":"Ci"},"vertices":1,"edges":[{"tail":0,"head":0,"gain":0}]})")),
                  parse_error);
}

TEST_CASE("group spec short form") {
  CHECK(io::group_spec_from_string("Ci").kind == GroupKind::Ci);
  CHECK(io::group_spec_from_string("Cm:4").m == 4);
  CHECK(io::group_spec_from_string("Cs_containing:1.5").angle == doctest::Approx(1.5));
  CHECK_THROWS_AS(io::group_spec_from_string("Cm"), parse_error);
  CHECK_THROWS_AS(io::group_spec_from_string("Xx:2"), parse_error);
}

TEST_CASE("count parsing") {
  CHECK(io::parse_count("2,2,1", std::nullopt, nullptr) == CountSpec::uniform(2, 2, 1));
  CHECK(io::parse_count("2,3,1i", std::nullopt, nullptr) == CountSpec::sphere_i());
  CHECK(io::parse_count("2,2,1r", std::nullopt, nullptr) == CountSpec::cylinder_r());
  const GroupSpec ci = GroupSpec::Ci();
  CHECK(io::parse_count("auto", SurfaceKind::Sphere, &ci) == CountSpec::uniform(2, 3, 3));
  CHECK_THROWS_AS(io::parse_count("auto", std::nullopt, nullptr), parse_error);
  CHECK_THROWS_AS(io::parse_count("2,1", std::nullopt, nullptr), parse_error);
  CHECK_THROWS_AS(io::parse_count("2,1,2", std::nullopt, nullptr), parse_error);
  CHECK(io::parse_count("subgroup", SurfaceKind::Cone, nullptr) ==
        CountSpec::subgroup_general(SurfaceKind::Cone));
}

TEST_CASE("move scripts serialize and replay identically") {
  auto ci = make_group(GroupSpec::Ci());
  const CountSpec spec = CountSpec::uniform(2, 1, 1);
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const GainGraph g = random_tight_graph_by_moves(spec, ci, 2 + rng.below(5), rng);
    const CertifyResult res = certify(g, spec);
    REQUIRE(res.script.has_value());
    const json j = io::to_json(*res.script);
    const MoveScript back = io::move_script_from_json(j);
    CHECK(io::to_json(back).dump() == j.dump());
    CHECK(same_graph(replay(back, &spec), g));
  }
}

TEST_CASE("framework JSON round trip") {
  auto c3 = make_group(GroupSpec::Cm(3));
  GainGraph g(c3, 2, {{0, 1, 0}, {0, 1, 1}});
  const SymmetricFramework fw = sample_config(SurfaceKind::Cylinder, g, 9);
  const json j = io::to_json(fw);
  const SymmetricFramework back = io::framework_from_json(j);
  CHECK(back.surface == fw.surface);
  REQUIRE(back.points.size() == fw.points.size());
  for (size_t i = 0; i < fw.points.size(); ++i)
    CHECK((back.points[i] - fw.points[i]).norm() == 0.0);
  CHECK(io::to_json(back).dump() == j.dump());
}
