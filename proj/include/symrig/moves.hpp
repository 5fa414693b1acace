#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "symrig/gain_graph.hpp"
#include "symrig/sparsity.hpp"

namespace symrig {

struct MoveScript;

/// Extension moves on gain graphs. Moves carry exact positional data
/// (vertex insertion slot, edge slots) so that a reduction's forward move
/// reconstructs the reduced-from graph label- and order-exactly; with the
/// fields left at their defaults, new vertices and edges are appended.
struct Move {
  enum class Kind {
    H1a,            // new vertex, edges to two distinct vertices
    H1b,            // new vertex, two parallel edges to one vertex (distinct gains)
    H1c,            // new vertex, one edge and one non-identity loop
    H2a, H2b,       // subdivide a non-loop edge, plus a third edge from z
    H2c, H2d,       // subdivide a loop, plus a third edge from z
    VertexToK4,     // expand a vertex into an identity-gain K4
    VertexTo4Cycle, // split a vertex into two, duplicating two chosen edges
    EdgeJoin,       // disjoint union with another certified graph plus one edge
  };

  Kind kind = Kind::H1a;

  // H1*/H2*/VertexTo4Cycle: label of the inserted vertex (-1 appends).
  int new_vertex = -1;

  // The inserted edges, with endpoints in post-insertion labels:
  //   H1*: the two new edges at the vertex.
  //   H2*: the two subdivision edges and the third edge, in slot order.
  //   VertexToK4: the six identity-gain K4 edges.
  //   VertexTo4Cycle: the two duplicated edges.
  //   EdgeJoin: the joining edge.
  std::vector<GainEdge> added;
  // Final list positions for `added` (ascending; empty appends in order).
  std::vector<int> new_edges;

  // H2*: the subdivided edge (pre-insertion index).
  int edge = -1;

  // VertexToK4: corners[0] is the expanded vertex, corners[1..3] the labels
  // of the inserted ones (ascending; empty appends); reattach maps the
  // expanded vertex's incident edges (in edge order) to corners 0..3;
  // unswitch re-gauges each corner after the expansion (empty: no switch).
  std::vector<int> corners;
  std::vector<int> reattach;
  std::vector<int> unswitch;

  // VertexTo4Cycle: v is split (pre-insertion label); edge_a/edge_b are the
  // kept duplicated edges (pre-insertion indices); reattach maps the other
  // incident edges of v (in edge order) to 0 = stay, 1 = twin.
  int v = -1;
  int edge_a = -1, edge_b = -1;

  // EdgeJoin: the joined component as its own certificate, its vertices
  // placed at right_vertices (ascending; empty appends) and its edges at
  // right_edges.
  std::shared_ptr<const MoveScript> joined;
  std::vector<int> right_vertices;
  std::vector<int> right_edges;
};

/// Convenience constructors used by generators and tests (append slots).
Move make_h1a(const GainGraph& g, int a, int b, int g1, int g2);
Move make_h1b(const GainGraph& g, int a, int g1, int g2);
Move make_h1c(const GainGraph& g, int a, int g1, int loop_gain);
Move make_h2(const GainGraph& g, int edge, int g1, int z, int g3);
Move make_vertex_to_k4(const GainGraph& g, int v, std::vector<int> reattach);
Move make_vertex_to_4cycle(const GainGraph& g, int v, int edge_a, int edge_b,
                           std::vector<int> reattach);
Move make_edge_join(const GainGraph& g, MoveScript joined_script, int a, int b_local, int gain);

/// A replayable certificate: base graph plus a move sequence. Replaying
/// from the base reconstructs the certified graph exactly and reproduces a
/// graph with the target tight count at every step.
struct MoveScript {
  enum class BaseKind { K1, K2, K1_loop, K4_plus_e, K5_minus_e };
  BaseKind base_kind = BaseKind::K1;
  std::shared_ptr<const GainGraph> base;
  std::vector<Move> moves;
};

/// Structural equality (group spec, vertex count, exact edge list).
bool same_graph(const GainGraph& a, const GainGraph& b);

GainGraph base_K1(GroupPtr group);
GainGraph base_K2(GroupPtr group, int gain = 0);
GainGraph base_K1_loop(GroupPtr group, int gain);
/// K4 with identity gains plus one extra edge: a loop at vertex 0 when
/// loop=true, otherwise an edge 0-1 with the given non-identity gain.
GainGraph base_K4_plus_e(GroupPtr group, int gain, bool loop = false);
GainGraph base_K5_minus_e(GroupPtr group);

/// Applies a move; throws invalid_argument when the arguments are invalid
/// or the result would violate the gain-graph invariants.
GainGraph apply(const GainGraph& g, const Move& move);

/// One reduction step: the reduced graph plus the forward move that undoes it.
struct Reduction {
  GainGraph reduced;
  Move forward;
};

/// A separation at a bridge into two tight parts.
struct Split {
  GainGraph left, right;
  std::vector<int> left_vertices, right_vertices; // original indices
  int bridge = 0;                                 // bridge edge index in the input
};

using ReductionStep = std::variant<Reduction, Split>;

/// Searches inverse moves in the fixed order: inverse H1 (degree-2, and
/// degree-3 with a loop), inverse H2 on degree-3 vertices, K4-contraction
/// of switching-trivial K4s, 4-cycle contraction, edge separation at
/// bridges. Every candidate is validated by the sparsity oracle. Ties break
/// by lowest vertex, then lowest edge index.
std::optional<ReductionStep> find_admissible_reduction(const GainGraph& g, const CountSpec& spec,
                                                       const SparsityLimits& limits = {});

struct CertifyResult {
  std::optional<MoveScript> script;
  std::optional<GainGraph> stuck; // counterexample candidate when certification fails
};

/// Reduces a gain-tight graph to a base graph and returns the forward
/// script. Supported counts: (2,3,3), (2,3,1), (2,2,2), (2,1,1), and
/// (2,2,1) for groups of order 2. Throws on non-tight input.
CertifyResult certify(const GainGraph& g, const CountSpec& spec,
                      const SparsityLimits& limits = {});

/// Replays a script, checking gain-graph invariants at every step; when
/// spec is given, also checks spec-tightness of every intermediate graph.
GainGraph replay(const MoveScript& script, const CountSpec* spec = nullptr,
                 const SparsityLimits& limits = {});

/// True when the graph matches the base pattern for the given kind.
bool matches_base(const GainGraph& g, MoveScript::BaseKind kind);

/// Base kinds admissible for a count spec.
std::vector<MoveScript::BaseKind> base_kinds_for(const CountSpec& spec);

} // namespace symrig
