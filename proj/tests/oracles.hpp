// Test-only reference oracles, deliberately independent of the library's
// enumeration strategy: balance by brute-force potential search, local
// groups by (vertex, element) reachability, sparsity by iterating every
// edge subset. Only usable on tiny graphs.
#pragma once

#include <optional>
#include <set>
#include <vector>

#include "symrig/gain_graph.hpp"
#include "symrig/group.hpp"
#include "symrig/rng.hpp"
#include "symrig/sparsity.hpp"

namespace symrig::testing {

inline std::vector<int> support_of(const GainGraph& g, const EdgeSet& subset) {
  std::set<int> s;
  for (int ei : subset) {
    s.insert(g.edge(ei).tail);
    s.insert(g.edge(ei).head);
  }
  return {s.begin(), s.end()};
}

/// Balanced iff loop-free and some vertex potential realizes every gain.
inline bool brute_balanced(const GainGraph& g, const EdgeSet& subset) {
  const SymmetryGroup& s = g.group();
  for (int ei : subset)
    if (g.edge(ei).is_loop()) return false;
  const auto verts = support_of(g, subset);
  const int t = static_cast<int>(verts.size());
  std::vector<int> phi(g.vertex_count(), 0);
  std::vector<int> digits(t, 0);
  while (true) {
    for (int i = 0; i < t; ++i) phi[verts[i]] = digits[i];
    bool ok = true;
    for (int ei : subset) {
      const GainEdge& e = g.edge(ei);
      if (s.mul(phi[e.tail], e.gain) != phi[e.head]) ok = false;
    }
    if (ok) return true;
    int pos = 0;
    while (pos < t) {
      if (++digits[pos] < s.order()) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos >= t) break;
  }
  return t == 0;
}

/// Subgroup of gains of closed walks at v, by reachability over
/// (vertex, accumulated gain) states.
inline std::vector<int> brute_local_group(const GainGraph& g, const EdgeSet& subset, int v) {
  const SymmetryGroup& s = g.group();
  bool incident = false;
  for (int ei : subset)
    if (g.edge(ei).tail == v || g.edge(ei).head == v) incident = true;
  if (!incident) return {};
  std::set<std::pair<int, int>> seen = {{v, 0}};
  std::vector<std::pair<int, int>> queue = {{v, 0}};
  while (!queue.empty()) {
    auto [u, acc] = queue.back();
    queue.pop_back();
    for (int ei : subset) {
      const GainEdge& e = g.edge(ei);
      std::vector<std::pair<int, int>> steps;
      if (e.tail == u) steps.push_back({e.head, s.mul(acc, e.gain)});
      if (e.head == u) steps.push_back({e.tail, s.mul(acc, s.inv(e.gain))});
      for (auto st : steps)
        if (seen.insert(st).second) queue.push_back(st);
    }
  }
  std::vector<int> out;
  for (auto [u, acc] : seen)
    if (u == v) out.push_back(acc);
  return out;
}

/// Per-subgroup bound parameter mirroring the count definitions.
inline int brute_kappa(const CountSpec& spec, const SymmetryGroup& s,
                       const std::vector<int>& h) {
  switch (spec.kind) {
    case CountSpec::Kind::SphereI:
      return s.trivial_or_inversion(h) ? 3 : 1;
    case CountSpec::Kind::CylinderR:
      return s.all_z_rotations(h) ? 2 : 1;
    case CountSpec::Kind::SubgroupGeneral:
      return symmetric_type_numeric(spec.surface, s, h);
    default:
      return 0;
  }
}

/// Literal check over every nonempty edge subset.
inline bool brute_gain_sparse(const GainGraph& g, const CountSpec& spec) {
  const int ne = g.edge_count();
  for (unsigned mask = 1; mask < (1u << ne); ++mask) {
    EdgeSet subset;
    for (int ei = 0; ei < ne; ++ei)
      if (mask & (1u << ei)) subset.push_back(ei);
    const int nv = static_cast<int>(support_of(g, subset).size());
    const int count = static_cast<int>(subset.size());
    if (spec.kind == CountSpec::Kind::Uniform) {
      if (count > spec.k * nv - spec.m) return false;
      if (brute_balanced(g, subset) && count > spec.k * nv - spec.l) return false;
    } else {
      for (int v : support_of(g, subset)) {
        const auto h = brute_local_group(g, subset, v);
        if (count > 2 * nv - brute_kappa(spec, g.group(), h)) return false;
      }
    }
  }
  return true;
}

inline bool brute_gain_tight(const GainGraph& g, const CountSpec& spec) {
  return brute_gain_sparse(g, spec) && g.edge_count() == tight_edge_target(g, spec);
}

/// Uniform random gain graph honoring the construction invariants.
inline GainGraph random_gain_graph(GroupPtr group, int max_vertices, int max_edges, Rng& rng,
                                   bool allow_loops = true) {
  const int n = 1 + rng.below(max_vertices);
  std::vector<GainEdge> pool;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j)
      for (int gain = 0; gain < group->order(); ++gain) pool.push_back({i, j, gain});
    if (allow_loops)
      for (int gain = 1; gain < group->order(); ++gain)
        if (gain <= group->inv(gain)) pool.push_back({i, i, gain});
  }
  for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i)
    std::swap(pool[i], pool[rng.below(i + 1)]);
  const int want = std::min<int>(static_cast<int>(pool.size()), rng.below(max_edges + 1));
  std::vector<GainEdge> edges(pool.begin(), pool.begin() + want);
  return GainGraph(std::move(group), n, std::move(edges));
}

} // namespace symrig::testing
