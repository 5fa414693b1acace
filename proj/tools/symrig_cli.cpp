// symrig: decide symmetry-forced rigidity of bar-joint frameworks on the
// sphere, cylinder and cone. This tool is a thin shell over the shared
// library's C interface: it reads files, forwards JSON, and maps status
// codes to exit codes (0 ok, 1 gating failure, 2 parse, 3 unsupported,
// 4 scale limit, 5 internal).

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "symrig.h"

namespace {

int exit_code_for(symrig_status status) {
  switch (status) {
    case SYMRIG_OK: return 0;
    case SYMRIG_ERR_PARSE: return 2;
    case SYMRIG_ERR_INVALID: return 2;
    case SYMRIG_ERR_UNSUPPORTED: return 3;
    case SYMRIG_ERR_SCALE: return 4;
    case SYMRIG_ERR_INTERNAL: return 5;
  }
  return 5;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "{\"error\":{\"code\":1,\"message\":\"cannot open %s\"}}\n",
                 path.c_str());
    std::exit(2);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Prints the payload; on failure the payload is the error object and goes
// to stderr instead.
int finish(symrig_status status, char* payload) {
  if (payload) {
    if (status == SYMRIG_OK)
      std::printf("%s\n", payload);
    else
      std::fprintf(stderr, "%s\n", payload);
    symrig_string_free(payload);
  }
  return exit_code_for(status);
}

struct GraphHandle {
  symrig_graph* graph = nullptr;
  ~GraphHandle() { symrig_graph_free(graph); }
};

int load_graph(const std::string& path, GraphHandle& handle) {
  const std::string text = read_file(path);
  char* err = nullptr;
  const symrig_status status = symrig_graph_parse(text.c_str(), &handle.graph, &err);
  if (status != SYMRIG_OK) return finish(status, err);
  symrig_string_free(err);
  return 0;
}

// "auto" needs the group from the file; the library resolves it.
std::string group_to_json(const std::string& group) {
  // Accept either a JSON object or the short form Kind[:param].
  if (!group.empty() && group.front() == '{') return group;
  std::string kind = group;
  std::string arg;
  if (auto pos = group.find(':'); pos != std::string::npos) {
    kind = group.substr(0, pos);
    arg = group.substr(pos + 1);
  }
  std::string j = "{\"kind\":\"" + kind + "\"";
  if (!arg.empty()) {
    if (kind == "Cs_containing" || kind == "C2_perp")
      j += ",\"angle\":" + arg;
    else
      j += ",\"m\":" + arg;
  }
  j += "}";
  return j;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetry-forced rigidity on the sphere, cylinder and cone"};
  app.require_subcommand(1);

  std::string input, surface, count = "auto", config, group;
  int trials = 5, instances = 100;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  bool exact = false;

  auto* check = app.add_subcommand("check-sparsity", "gain-sparsity and tightness verdict");
  check->add_option("--input", input, "gain graph JSON file")->required();
  check->add_option("--count", count, "k,l,m | auto | 2,3,1i | 2,2,1r | subgroup");
  check->add_option("--surface", surface, "sphere | cylinder | cone");

  auto* cert = app.add_subcommand("certify", "reduction certificate for a tight graph");
  cert->add_option("--input", input)->required();
  cert->add_option("--count", count);
  cert->add_option("--surface", surface);

  auto* rank = app.add_subcommand("rank", "orbit-surface matrix rank report");
  rank->add_option("--input", input)->required();
  rank->add_option("--surface", surface)->required();
  rank->add_option("--config", config, "pinned configuration JSON file");
  rank->add_option("--trials", trials);
  rank->add_option("--tol", tol);
  rank->add_option("--seed", seed);
  rank->add_flag("--exact", exact, "also compute the exact-rational rank when available");

  std::string matrix_kind = "orbit-surface";
  auto* matrix_cmd = app.add_subcommand("matrix", "assembled matrix as CSV for external audit");
  matrix_cmd->add_option("--input", input)->required();
  matrix_cmd->add_option("--surface", surface)->required();
  matrix_cmd->add_option("--config", config);
  matrix_cmd->add_option("--seed", seed);
  matrix_cmd->add_option("--kind", matrix_kind, "orbit | orbit-surface | cover");

  auto* motions = app.add_subcommand("motions", "symmetric motion basis and lift residuals");
  motions->add_option("--input", input)->required();
  motions->add_option("--surface", surface)->required();
  motions->add_option("--config", config);
  motions->add_option("--seed", seed);

  auto* stress_cmd = app.add_subcommand("stresses", "symmetric stress basis and lift residuals");
  stress_cmd->add_option("--input", input)->required();
  stress_cmd->add_option("--surface", surface)->required();
  stress_cmd->add_option("--config", config);
  stress_cmd->add_option("--seed", seed);

  auto* cover_cmd = app.add_subcommand("cover", "covering graph as an edge list");
  cover_cmd->add_option("--input", input)->required();

  auto* cross = app.add_subcommand("cross-validate", "randomized oracle/numerics agreement");
  cross->add_option("--surface", surface)->required();
  cross->add_option("--group", group, "Ci | Cm:3 | Cs_containing | ... or JSON")->required();
  cross->add_option("--count", count);
  cross->add_option("--n", instances);
  cross->add_option("--seed", seed);
  cross->add_option("--trials", trials);

  auto* paper = app.add_subcommand("paper-suite", "replay the pinned reference examples");
  (void)paper;

  auto* conjecture = app.add_subcommand("conjecture", "non-gating conjectural-count experiment");
  conjecture->add_option("--surface", surface)->required();
  conjecture->add_option("--group", group)->required();
  conjecture->add_option("--n", instances);
  conjecture->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  char* out = nullptr;

  if (check->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(input, g)) return rc;
    const symrig_status status = symrig_check_sparsity(
        g.graph, count.c_str(), surface.empty() ? nullptr : surface.c_str(), &out);
    return finish(status, out);
  }
  if (cert->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(input, g)) return rc;
    const symrig_status status = symrig_certify(
        g.graph, count.c_str(), surface.empty() ? nullptr : surface.c_str(), &out);
    return finish(status, out);
  }
  if (rank->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(input, g)) return rc;
    const std::string cfg = config.empty() ? std::string() : read_file(config);
    const symrig_status status =
        symrig_rank(g.graph, surface.c_str(), cfg.empty() ? nullptr : cfg.c_str(), trials, tol,
                    seed, &out);
    if (status != SYMRIG_OK || !exact) return finish(status, out);
    char* exact_out = nullptr;
    const symrig_status es = symrig_exact_rank(g.graph, surface.c_str(), seed, 3, &exact_out);
    if (es == SYMRIG_OK && out && exact_out) {
      std::string merged(out);
      merged.pop_back(); // strip '}'
      merged += ",\"exact\":" + std::string(exact_out) + "}";
      std::printf("%s\n", merged.c_str());
      symrig_string_free(out);
      symrig_string_free(exact_out);
      return 0;
    }
    symrig_string_free(out);
    return finish(es, exact_out);
  }
  if (matrix_cmd->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(input, g)) return rc;
    const std::string cfg = config.empty() ? std::string() : read_file(config);
    const symrig_status status =
        symrig_matrix_csv(g.graph, surface.c_str(), matrix_kind.c_str(),
                          cfg.empty() ? nullptr : cfg.c_str(), seed, &out);
    if (status == SYMRIG_OK && out) {
      std::fputs(out, stdout);
      symrig_string_free(out);
      return 0;
    }
    return finish(status, out);
  }
  if (motions->parsed() || stress_cmd->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(input, g)) return rc;
    const std::string cfg = config.empty() ? std::string() : read_file(config);
    const symrig_status status =
        symrig_motions(g.graph, surface.c_str(), cfg.empty() ? nullptr : cfg.c_str(), seed,
                       stress_cmd->parsed() ? 1 : 0, &out);
    return finish(status, out);
  }
  if (cover_cmd->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(input, g)) return rc;
    const symrig_status status = symrig_cover(g.graph, &out);
    return finish(status, out);
  }
  if (cross->parsed()) {
    const std::string experiment = "{\"surface\":\"" + surface + "\",\"group\":" +
                                   group_to_json(group) + ",\"count\":\"" + count +
                                   "\",\"instances\":" + std::to_string(instances) +
                                   ",\"seed\":" + std::to_string(seed) +
                                   ",\"trials\":" + std::to_string(trials) + "}";
    const symrig_status status = symrig_cross_validate(experiment.c_str(), &out);
    if (status != SYMRIG_OK) return finish(status, out);
    // Nonzero exit when a gating suite disagrees.
    const bool disagreed =
        out && std::string(out).find("\"disagreements\":[]") == std::string::npos;
    const int rc = finish(status, out);
    (void)rc;
    return disagreed ? 1 : 0;
  }
  if (paper->parsed()) {
    const symrig_status status = symrig_paper_suite(&out);
    if (status != SYMRIG_OK) return finish(status, out);
    const std::string text(out);
    const int rc = finish(status, out);
    (void)rc;
    // Gating: every pinned example must pass.
    return text.find("\"agree\":false") == std::string::npos ? 0 : 1;
  }
  if (conjecture->parsed()) {
    const symrig_status status = symrig_conjecture(
        surface.c_str(), group_to_json(group).c_str(), instances, seed, &out);
    return finish(status, out); // never gating
  }
  return 0;
}
