#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "symrig/group.hpp"

namespace symrig {

/// Directed edge with a gain. Loops (tail == head) never carry the identity;
/// the canonical file orientation is the one stored here.
struct GainEdge {
  int tail = 0;
  int head = 0;
  int gain = 0;

  bool is_loop() const { return tail == head; }
};

using EdgeSet = std::vector<int>; // edge indices into a GainGraph

/// A walk step: the edge index and whether it is traversed tail->head.
struct WalkStep {
  int edge = 0;
  bool forward = true;
};

struct Walk {
  int start = 0;
  std::vector<WalkStep> steps;
};

class CoverGraph;

/// Directed multigraph with group-element gains: the quotient object the
/// combinatorics run on. Values are immutable; operations return new graphs.
class GainGraph {
public:
  GainGraph(GroupPtr group, int n, std::vector<GainEdge> edges);

  const GroupPtr& group_ptr() const { return group_; }
  const SymmetryGroup& group() const { return *group_; }
  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<GainEdge>& edges() const { return edges_; }
  const GainEdge& edge(int i) const { return edges_[i]; }

  EdgeSet all_edges() const;
  std::vector<int> incident_edges(int v) const; // loops listed once
  std::vector<int> neighbors(int v) const;      // distinct, excluding v

  /// Gain of the edge when traversed from `from`; inverted against the
  /// stored orientation when needed.
  int gain_from(int edge_index, int from) const;

private:
  GroupPtr group_;
  int n_ = 0;
  std::vector<GainEdge> edges_;
};

/// Re-gauge the gains at vertex v by x: loops at v are conjugated, edges
/// leaving v are premultiplied, edges entering v are postmultiplied by the
/// inverse. Edge order is preserved.
GainGraph switch_vertex(const GainGraph& g, int v, int x);

/// Product of gains along a walk; each backward traversal contributes the
/// inverse gain.
int walk_gain(const GainGraph& g, const Walk& walk);

/// Per-component data for an edge subset: spanning-tree potentials rooted
/// at the minimum vertex of each component (root potential = identity).
struct Potentials {
  std::vector<int> component; // -1 for vertices outside the support
  std::vector<int> potential; // identity for vertices outside the support
  std::vector<int> roots;     // minimum vertex per component
  std::vector<char> tree_edge;
  bool has_loop = false;
  bool balanced = false; // every non-tree edge consistent and no loop
};

Potentials compute_potentials(const GainGraph& g, const EdgeSet& edges);

/// True iff every cycle inside the subset has identity gain.
bool is_balanced(const GainGraph& g, const EdgeSet& edges);

/// Switches every vertex of a balanced graph so all gains become the
/// identity. Throws when the graph is unbalanced.
GainGraph switch_to_identity(const GainGraph& g);

/// True when g and h have the same vertices/edge endpoints and some vertex
/// switching carries the gains of g onto those of h (edge order ignored,
/// orientations normalized).
bool switching_equivalent(const GainGraph& g, const GainGraph& h);

/// Subgroup induced by the subset relative to v (sorted element indices),
/// computed at the root of v's component; empty set when v is not incident
/// to the subset.
std::vector<int> local_group(const GainGraph& g, const EdgeSet& edges, int v);

/// Simple graph on order*n vertices labelled (g, v) with index g*n + v.
class CoverGraph {
public:
  CoverGraph(GroupPtr group, int quotient_n,
             std::vector<std::pair<int, int>> edges,
             std::vector<std::vector<int>> fibers);

  const GroupPtr& group_ptr() const { return group_; }
  int quotient_vertex_count() const { return n0_; }
  int vertex_count() const { return group_->order() * n0_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  /// Cover-edge indices lifted from each quotient edge.
  const std::vector<std::vector<int>>& fibers() const { return fibers_; }

  int vertex_id(int g, int v) const { return g * n0_ + v; }
  std::pair<int, int> vertex_label(int id) const { return {id / n0_, id % n0_}; }
  /// The free action: element x sends (g, v) to (x*g, v).
  int act(int x, int vertex) const;

private:
  GroupPtr group_;
  int n0_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> fibers_;
};

/// Lift to the covering graph. Simplicity of the cover is exactly the
/// GainGraph invariant set; an involutory loop gain lifts to |S|/2 edges,
/// every other edge orbit to |S|.
CoverGraph cover(const GainGraph& g);

/// Quotient of a simple graph under a free action given as one vertex
/// permutation per group element (indexed like the group). Orbit
/// representatives are the minimum-index vertices.
struct QuotientResult {
  GainGraph graph;
  std::vector<int> representative; // quotient vertex -> original vertex
  std::vector<int> orbit_of;       // original vertex -> quotient vertex
};

QuotientResult quotient(GroupPtr group, int n,
                        const std::vector<std::pair<int, int>>& edges,
                        const std::vector<std::vector<int>>& action);

} // namespace symrig
