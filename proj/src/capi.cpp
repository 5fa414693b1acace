#include "symrig.h"

#include <cstring>
#include <new>
#include <string>

#include "symrig/exact.hpp"
#include "symrig/harness.hpp"
#include "symrig/json_io.hpp"

using nlohmann::json;

struct symrig_graph {
  symrig::GainGraph graph;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  if (out) *out = dup_string(j.dump());
}

symrig_status fail(char** out, symrig_status code, const std::string& message) {
  emit(out, json{{"error", {{"code", static_cast<int>(code)}, {"message", message}}}});
  return code;
}

template <typename Fn>
symrig_status guarded(char** out, Fn&& fn) {
  try {
    return fn();
  } catch (const symrig::parse_error& e) {
    return fail(out, SYMRIG_ERR_PARSE, e.what());
  } catch (const symrig::unsupported& e) {
    return fail(out, SYMRIG_ERR_UNSUPPORTED, e.what());
  } catch (const symrig::scale_limit& e) {
    return fail(out, SYMRIG_ERR_SCALE, e.what());
  } catch (const symrig::error& e) {
    return fail(out, SYMRIG_ERR_INVALID, e.what());
  } catch (const json::exception& e) {
    return fail(out, SYMRIG_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(out, SYMRIG_ERR_INTERNAL, e.what());
  }
}

json parse_json_text(const char* text, const char* what) {
  if (!text) throw symrig::parse_error(std::string(what) + " is null");
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw symrig::parse_error(std::string("malformed JSON in ") + what);
  return j;
}

std::optional<symrig::SurfaceKind> optional_surface(const char* surface) {
  if (!surface || !*surface) return std::nullopt;
  return symrig::io::surface_from_string(surface);
}

symrig::SymmetricFramework framework_for(const symrig::GainGraph& g,
                                         symrig::SurfaceKind surface, const char* config_json,
                                         uint64_t seed) {
  if (config_json && *config_json) {
    const json j = parse_json_text(config_json, "config");
    symrig::SymmetricFramework fw{g, surface, symrig::io::points_from_json(j.at("points"))};
    if (j.contains("surface") &&
        symrig::io::surface_from_string(j.at("surface").get<std::string>()) != surface)
      throw symrig::invalid_argument("config surface does not match the requested surface");
    validate_framework(fw);
    return fw;
  }
  return symrig::sample_config(surface, g, seed);
}

} // namespace

extern "C" {

const char* symrig_version(void) { return "0.1.0"; }

void symrig_string_free(char* s) { std::free(s); }

symrig_status symrig_graph_parse(const char* json_text, symrig_graph** out_graph,
                                 char** out_error) {
  if (out_graph) *out_graph = nullptr;
  return guarded(out_error, [&]() -> symrig_status {
    if (!out_graph) throw symrig::invalid_argument("out_graph is null");
    const json j = parse_json_text(json_text, "gain graph");
    *out_graph = new symrig_graph{symrig::io::gain_graph_from_json(j)};
    if (out_error) *out_error = nullptr;
    return SYMRIG_OK;
  });
}

void symrig_graph_free(symrig_graph* graph) { delete graph; }

symrig_status symrig_graph_to_json(const symrig_graph* graph, char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    if (!graph) throw symrig::invalid_argument("graph is null");
    emit(out_json, symrig::io::to_json(graph->graph));
    return SYMRIG_OK;
  });
}

symrig_status symrig_cover(const symrig_graph* graph, char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    if (!graph) throw symrig::invalid_argument("graph is null");
    emit(out_json, symrig::io::to_json(symrig::cover(graph->graph)));
    return SYMRIG_OK;
  });
}

symrig_status symrig_check_sparsity(const symrig_graph* graph, const char* count,
                                    const char* surface, char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    if (!graph) throw symrig::invalid_argument("graph is null");
    const auto sk = optional_surface(surface);
    const symrig::GroupSpec gspec = graph->graph.group().spec();
    const symrig::CountSpec spec =
        symrig::io::parse_count(count ? count : "auto", sk, &gspec);
    const symrig::SparsityResult res = symrig::is_gain_sparse(graph->graph, spec);
    const bool tight =
        res.sparse &&
        graph->graph.edge_count() == symrig::tight_edge_target(graph->graph, spec);
    json out{{"count", symrig::to_string(spec)},
             {"sparse", res.sparse},
             {"tight", tight},
             {"violation", res.violation ? symrig::io::to_json(*res.violation) : json(nullptr)}};
    emit(out_json, out);
    return SYMRIG_OK;
  });
}

symrig_status symrig_certify(const symrig_graph* graph, const char* count, const char* surface,
                             char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    if (!graph) throw symrig::invalid_argument("graph is null");
    const auto sk = optional_surface(surface);
    const symrig::GroupSpec gspec = graph->graph.group().spec();
    const symrig::CountSpec spec =
        symrig::io::parse_count(count ? count : "auto", sk, &gspec);
    const symrig::CertifyResult res = symrig::certify(graph->graph, spec);
    json out;
    if (res.script) {
      // Re-validate before reporting success: the replay must stay tight.
      symrig::replay(*res.script, &spec);
      out = json{{"certified", true}, {"script", symrig::io::to_json(*res.script)}};
    } else {
      out = json{{"certified", false}, {"stuck", symrig::io::to_json(*res.stuck)}};
    }
    emit(out_json, out);
    return SYMRIG_OK;
  });
}

symrig_status symrig_rank(const symrig_graph* graph, const char* surface,
                          const char* config_json, int trials, double tol_rel, uint64_t seed,
                          char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    if (!graph) throw symrig::invalid_argument("graph is null");
    if (!surface) throw symrig::invalid_argument("surface is required");
    const symrig::SurfaceKind sk = symrig::io::surface_from_string(surface);
    symrig::RankPolicy policy;
    if (trials > 0) policy.trials = trials;
    if (tol_rel > 0) policy.tol_rel = tol_rel;
    symrig::RankReport report;
    if (config_json && *config_json) {
      const symrig::SymmetricFramework fw = framework_for(graph->graph, sk, config_json, seed);
      report = numeric_rank(orbit_surface_matrix(fw), policy);
    } else {
      report = generic_orbit_surface_rank(graph->graph, sk, seed, policy);
    }
    emit(out_json, symrig::io::to_json(report));
    return SYMRIG_OK;
  });
}

symrig_status symrig_exact_rank(const symrig_graph* graph, const char* surface, uint64_t seed,
                                int trials, char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    if (!graph) throw symrig::invalid_argument("graph is null");
    if (!surface) throw symrig::invalid_argument("surface is required");
    const symrig::SurfaceKind sk = symrig::io::surface_from_string(surface);
    const auto rank =
        symrig::exact_orbit_surface_rank(graph->graph, sk, seed, trials > 0 ? trials : 3);
    json out{{"available", rank.has_value()}};
    out["rank"] = rank ? json(*rank) : json(nullptr);
    emit(out_json, out);
    return SYMRIG_OK;
  });
}

symrig_status symrig_matrix_csv(const symrig_graph* graph, const char* surface,
                                const char* kind, const char* config_json, uint64_t seed,
                                char** out_csv) {
  return guarded(out_csv, [&]() -> symrig_status {
    if (!graph) throw symrig::invalid_argument("graph is null");
    if (!surface) throw symrig::invalid_argument("surface is required");
    const symrig::SurfaceKind sk = symrig::io::surface_from_string(surface);
    const symrig::SymmetricFramework fw = framework_for(graph->graph, sk, config_json, seed);
    const std::string which = kind ? kind : "orbit-surface";
    Eigen::MatrixXd m;
    if (which == "orbit")
      m = orbit_matrix(fw);
    else if (which == "orbit-surface")
      m = orbit_surface_matrix(fw);
    else if (which == "cover")
      m = surface_rigidity_matrix(build_cover_framework(fw));
    else
      throw symrig::parse_error("matrix kind must be orbit, orbit-surface or cover");
    std::string csv;
    char buf[64];
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
        csv += buf;
        csv += (c + 1 < m.cols()) ? ',' : '\n';
      }
    }
    if (out_csv) *out_csv = dup_string(csv);
    return SYMRIG_OK;
  });
}

symrig_status symrig_motions(const symrig_graph* graph, const char* surface,
                             const char* config_json, uint64_t seed, int stresses,
                             char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    if (!graph) throw symrig::invalid_argument("graph is null");
    if (!surface) throw symrig::invalid_argument("surface is required");
    const symrig::SurfaceKind sk = symrig::io::surface_from_string(surface);
    const symrig::SymmetricFramework fw = framework_for(graph->graph, sk, config_json, seed);
    json vectors = json::array();
    json residuals = json::array();
    if (stresses) {
      for (const auto& w : stress_basis(fw)) {
        json v = json::array();
        for (int i = 0; i < w.size(); ++i) v.push_back(w(i));
        vectors.push_back(v);
        residuals.push_back(lift_stress(fw, w).residual);
      }
    } else {
      for (const auto& u : motion_basis(fw)) {
        json v = json::array();
        for (int i = 0; i < u.size(); ++i) v.push_back(u(i));
        vectors.push_back(v);
        residuals.push_back(lift_motion(fw, u).residual);
      }
    }
    emit(out_json, json{{"kind", stresses ? "stresses" : "motions"},
                        {"count", vectors.size()},
                        {"vectors", vectors},
                        {"lift_residuals", residuals},
                        {"points", symrig::io::points_to_json(fw.points)}});
    return SYMRIG_OK;
  });
}

symrig_status symrig_cross_validate(const char* experiment_json, char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    const json j = parse_json_text(experiment_json, "experiment");
    symrig::Experiment exp;
    exp.surface = symrig::io::surface_from_string(j.at("surface").get<std::string>());
    exp.group = symrig::io::group_spec_from_json(j.at("group"));
    exp.count = symrig::io::parse_count(j.value("count", "auto"), exp.surface, &exp.group);
    if (j.value("policy", "forward_moves") == std::string("random_edges"))
      exp.policy = symrig::Experiment::Policy::RandomEdges;
    exp.instances = j.value("instances", 100);
    exp.seed = j.value("seed", 0ull);
    exp.trials = j.value("trials", 5);
    exp.tol_rel = j.value("tol_rel", 1e-10);
    exp.max_vertices = j.value("max_vertices", 7);
    exp.gating = j.value("gating", true);
    emit(out_json, symrig::cross_validate(exp).to_json());
    return SYMRIG_OK;
  });
}

symrig_status symrig_cover_equivalence(int instances, uint64_t seed, char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    emit(out_json, symrig::cover_equivalence_test(instances, seed).to_json());
    return SYMRIG_OK;
  });
}

symrig_status symrig_paper_suite(char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    emit(out_json, symrig::paper_example_suite().to_json());
    return SYMRIG_OK;
  });
}

symrig_status symrig_conjecture(const char* surface, const char* group_json, int instances,
                                uint64_t seed, char** out_json) {
  return guarded(out_json, [&]() -> symrig_status {
    if (!surface) throw symrig::invalid_argument("surface is required");
    const symrig::SurfaceKind sk = symrig::io::surface_from_string(surface);
    const symrig::GroupSpec group =
        symrig::io::group_spec_from_json(parse_json_text(group_json, "group"));
    emit(out_json, symrig::conjecture_experiment(sk, group, instances, seed).to_json());
    return SYMRIG_OK;
  });
}

} // extern "C"
