#pragma once

#include <json.hpp>

#include "symrig/matrices.hpp"
#include "symrig/moves.hpp"

namespace symrig {

/// One randomized cross-validation run: the combinatorial oracle, the
/// reduction certifier and the numeric rank decide every instance; the
/// verdict records every disagreement with a replayable payload.
struct Experiment {
  SurfaceKind surface = SurfaceKind::Sphere;
  GroupSpec group;
  CountSpec count;
  enum class Policy { ForwardMoves, RandomEdges } policy = Policy::ForwardMoves;
  int instances = 100;
  std::uint64_t seed = 0;
  int trials = 5;
  double tol_rel = 1e-10;
  int max_vertices = 7;
  bool gating = true; // conjecture experiments report without asserting
};

struct Verdict {
  nlohmann::json config;
  int checks = 0;
  int agreements = 0;
  int skipped = 0;
  bool gating = true;
  nlohmann::json records = nlohmann::json::array();
  nlohmann::json disagreements = nlohmann::json::array();

  double agreement_rate() const {
    return checks == 0 ? 1.0 : static_cast<double>(agreements) / checks;
  }
  bool all_agree() const { return agreements == checks; }
  nlohmann::json to_json() const;
};

Verdict cross_validate(const Experiment& exp);

/// 200-ish random order-2 gain graphs: (2,2,1)-gain-tightness of the
/// quotient against (2,2)-tightness of the cover, both by exact oracles.
Verdict cover_equivalence_test(int instances, std::uint64_t seed);

/// Replays the pinned configurations and matrix ranks.
Verdict paper_example_suite();

/// Non-gating run for a conjectural (surface, group) pair.
Verdict conjecture_experiment(SurfaceKind surface, const GroupSpec& group, int instances,
                              std::uint64_t seed);

/// Random spec-tight graph grown by forward moves from a base graph
/// (oracle-validated at every step).
GainGraph random_tight_graph_by_moves(const CountSpec& spec, GroupPtr group,
                                      int target_vertices, Rng& rng,
                                      const SparsityLimits& limits = {});

/// Random spec-tight graph by greedy randomized edge insertion.
std::optional<GainGraph> random_tight_graph_by_edges(const CountSpec& spec, GroupPtr group,
                                                     int vertices, Rng& rng,
                                                     bool allow_loops = true,
                                                     const SparsityLimits& limits = {});

/// Breaks tightness by adding, removing, or swapping an edge.
GainGraph perturb_non_tight(const GainGraph& g, const CountSpec& spec, Rng& rng,
                            const SparsityLimits& limits = {});

/// The degree-3 dichotomy asserted during reductions for (2,i,i) counts:
/// a loopless degree-3 vertex with three distinct neighbours either lies in
/// a balanced K4 or admits an oracle-validated inverse H2a.
bool degree3_dichotomy_holds(const GainGraph& g, const CountSpec& spec, int v,
                             const SparsityLimits& limits = {});

} // namespace symrig
