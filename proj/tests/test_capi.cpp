// Exercises the shared library through the C interface only.
#include <cassert>
#include <cstdio>
#include <cstring>
#include <string>

#include "symrig.h"

namespace {

int failures = 0;

void expect(bool ok, const char* what) {
  if (!ok) {
    ++failures;
    std::fprintf(stderr, "FAIL: %s\n", what);
  }
}

bool contains(const char* text, const char* needle) {
  return text && std::strstr(text, needle) != nullptr;
}

const char* k4e_ci_json =
    "{\"group\":{\"kind\":\"Ci\"},\"vertices\":4,\"edges\":["
    "{\"tail\":0,\"head\":1,\"gain\":0},{\"tail\":0,\"head\":2,\"gain\":0},"
    "{\"tail\":0,\"head\":3,\"gain\":0},{\"tail\":1,\"head\":2,\"gain\":0},"
    "{\"tail\":1,\"head\":3,\"gain\":0},{\"tail\":2,\"head\":3,\"gain\":0},"
    "{\"tail\":0,\"head\":1,\"gain\":1}]}";

} // namespace

int main() {
  expect(std::string(symrig_version()) == "0.1.0", "version");

  symrig_graph* g = nullptr;
  char* err = nullptr;
  expect(symrig_graph_parse("{not json", &g, &err) == SYMRIG_ERR_PARSE, "parse failure code");
  expect(contains(err, "error"), "parse failure payload");
  symrig_string_free(err);

  expect(symrig_graph_parse(k4e_ci_json, &g, &err) == SYMRIG_OK, "parse ok");
  expect(g != nullptr, "graph handle");

  char* out = nullptr;
  expect(symrig_graph_to_json(g, &out) == SYMRIG_OK, "to_json ok");
  expect(contains(out, "\"vertices\":4"), "round trip vertices");
  symrig_string_free(out);

  expect(symrig_check_sparsity(g, "2,2,1", nullptr, &out) == SYMRIG_OK, "sparsity ok");
  expect(contains(out, "\"tight\":true"), "K4+e is (2,2,1)-tight");
  symrig_string_free(out);

  expect(symrig_check_sparsity(g, "auto", "cylinder", &out) == SYMRIG_OK, "auto count");
  expect(contains(out, "\"count\":\"2,2,1\""), "auto resolves via the tables");
  symrig_string_free(out);

  expect(symrig_check_sparsity(g, "2,9,9", nullptr, &out) == SYMRIG_ERR_PARSE, "bad count");
  symrig_string_free(out);

  expect(symrig_certify(g, "2,2,1", nullptr, &out) == SYMRIG_OK, "certify ok");
  expect(contains(out, "\"certified\":true"), "K4+e certifies (it is a base graph)");
  symrig_string_free(out);

  expect(symrig_cover(g, &out) == SYMRIG_OK, "cover ok");
  expect(contains(out, "\"vertices\":8"), "cover has 8 vertices");
  symrig_string_free(out);

  // Pinned-configuration rank: the reference cylinder coordinates.
  const char* config =
      "{\"surface\":\"cylinder\",\"points\":[[0.7071067811865476,0.7071067811865476,4.0],"
      "[1.0,0.0,2.0],[-1.0,0.0,-1.0],[0.7071067811865476,0.7071067811865476,-1.0]]}";
  expect(symrig_rank(g, "cylinder", config, 1, 1e-10, 0, &out) == SYMRIG_OK, "rank ok");
  expect(contains(out, "\"rank\":11"), "pinned rank 11");
  expect(contains(out, "\"nullity\":1"), "pinned nullity 1");
  symrig_string_free(out);

  expect(symrig_rank(g, "cylinder", nullptr, 5, 1e-10, 7, &out) == SYMRIG_OK, "generic rank");
  expect(contains(out, "\"rank\":11"), "generic rank 11");
  symrig_string_free(out);

  expect(symrig_exact_rank(g, "cylinder", 7, 3, &out) == SYMRIG_OK, "exact rank");
  expect(contains(out, "\"available\":true") && contains(out, "\"rank\":11"),
         "exact rank 11 for Ci");
  symrig_string_free(out);

  expect(symrig_motions(g, "cylinder", nullptr, 7, 0, &out) == SYMRIG_OK, "motions");
  expect(contains(out, "\"count\":1"), "one symmetric motion (k_S = 1)");
  symrig_string_free(out);

  expect(symrig_motions(g, "cylinder", nullptr, 7, 1, &out) == SYMRIG_OK, "stresses");
  expect(contains(out, "\"count\":0"), "no symmetric stress");
  symrig_string_free(out);

  const char* experiment =
      "{\"surface\":\"sphere\",\"group\":{\"kind\":\"Ci\"},\"count\":\"auto\","
      "\"instances\":4,\"seed\":5,\"max_vertices\":5}";
  expect(symrig_cross_validate(experiment, &out) == SYMRIG_OK, "cross validate");
  expect(contains(out, "\"agreement_rate\":1.0"), "cross validation agrees");
  symrig_string_free(out);

  expect(symrig_cover_equivalence(20, 3, &out) == SYMRIG_OK, "cover equivalence");
  expect(contains(out, "\"disagreements\":[]"), "cover equivalence agrees");
  symrig_string_free(out);

  symrig_graph_free(g);

  // Unsupported pair surfaces as the dedicated status.
  symrig_graph* h = nullptr;
  expect(symrig_graph_parse("{\"group\":{\"kind\":\"Dm\",\"m\":3},\"vertices\":1,\"edges\":[]}",
                            &h, &err) == SYMRIG_OK,
         "parse Dm graph");
  symrig_string_free(err);
  expect(symrig_certify(h, "subgroup", "sphere", &out) == SYMRIG_ERR_UNSUPPORTED,
         "no recursive construction for subgroup counts");
  symrig_string_free(out);
  symrig_graph_free(h);

  if (failures == 0) std::printf("capi_tests: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
