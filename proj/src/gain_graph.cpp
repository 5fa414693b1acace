#include "symrig/gain_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace symrig {

namespace {

// Gain of a non-loop edge normalized to run from min(tail,head) to the
// other endpoint; loops normalize gain g and g^-1 to the smaller index.
int normalized_gain(const SymmetryGroup& s, const GainEdge& e) {
  if (e.is_loop()) return std::min(e.gain, s.inv(e.gain));
  return e.tail <= e.head ? e.gain : s.inv(e.gain);
}

} // namespace

GainGraph::GainGraph(GroupPtr group, int n, std::vector<GainEdge> edges)
    : group_(std::move(group)), n_(n), edges_(std::move(edges)) {
  if (!group_) throw invalid_argument("gain graph requires a group");
  if (n_ < 0) throw invalid_argument("negative vertex count");
  const SymmetryGroup& s = *group_;
  std::set<std::tuple<int, int, int>> seen; // (min,max,normalized gain)
  for (const auto& e : edges_) {
    if (e.tail < 0 || e.tail >= n_ || e.head < 0 || e.head >= n_)
      throw invalid_argument("edge endpoint out of range");
    if (e.gain < 0 || e.gain >= s.order())
      throw invalid_argument("gain index out of range");
    if (e.is_loop() && e.gain == 0)
      throw invalid_argument("identity gain on a loop (cover would not be simple)");
    const auto key = std::make_tuple(std::min(e.tail, e.head), std::max(e.tail, e.head),
                                     normalized_gain(s, e));
    if (!seen.insert(key).second)
      throw invalid_argument("duplicate edge after gain normalization (cover would not be simple)");
  }
}

EdgeSet GainGraph::all_edges() const {
  EdgeSet all(edges_.size());
  for (int i = 0; i < edge_count(); ++i) all[i] = i;
  return all;
}

std::vector<int> GainGraph::incident_edges(int v) const {
  std::vector<int> out;
  for (int i = 0; i < edge_count(); ++i)
    if (edges_[i].tail == v || edges_[i].head == v) out.push_back(i);
  return out;
}

std::vector<int> GainGraph::neighbors(int v) const {
  std::set<int> out;
  for (const auto& e : edges_) {
    if (e.tail == v && e.head != v) out.insert(e.head);
    if (e.head == v && e.tail != v) out.insert(e.tail);
  }
  return {out.begin(), out.end()};
}

int GainGraph::gain_from(int edge_index, int from) const {
  const GainEdge& e = edges_[edge_index];
  if (e.tail == from) return e.gain;
  if (e.head == from) return group_->inv(e.gain);
  throw invalid_argument("vertex not incident to edge");
}

GainGraph switch_vertex(const GainGraph& g, int v, int x) {
  if (v < 0 || v >= g.vertex_count()) throw invalid_argument("switch: invalid vertex");
  const SymmetryGroup& s = g.group();
  if (x < 0 || x >= s.order()) throw invalid_argument("switch: invalid element");
  std::vector<GainEdge> edges = g.edges();
  for (auto& e : edges) {
    if (e.is_loop()) {
      if (e.tail == v) e.gain = s.mul(s.mul(x, e.gain), s.inv(x));
    } else if (e.tail == v) {
      e.gain = s.mul(x, e.gain);
    } else if (e.head == v) {
      e.gain = s.mul(e.gain, s.inv(x));
    }
  }
  return GainGraph(g.group_ptr(), g.vertex_count(), std::move(edges));
}

int walk_gain(const GainGraph& g, const Walk& walk) {
  const SymmetryGroup& s = g.group();
  int at = walk.start;
  int acc = 0;
  for (const auto& step : walk.steps) {
    if (step.edge < 0 || step.edge >= g.edge_count())
      throw invalid_argument("walk references invalid edge");
    const GainEdge& e = g.edge(step.edge);
    const int from = step.forward ? e.tail : e.head;
    const int to = step.forward ? e.head : e.tail;
    if (from != at) throw invalid_argument("walk step not incident to current vertex");
    acc = s.mul(acc, step.forward ? e.gain : s.inv(e.gain));
    at = to;
  }
  return acc;
}

Potentials compute_potentials(const GainGraph& g, const EdgeSet& edges) {
  const SymmetryGroup& s = g.group();
  const int n = g.vertex_count();
  Potentials out;
  out.component.assign(n, -1);
  out.potential.assign(n, 0);
  out.tree_edge.assign(g.edge_count(), 0);

  std::vector<char> in_set(g.edge_count(), 0);
  std::vector<char> support(n, 0);
  for (int ei : edges) {
    in_set[ei] = 1;
    support[g.edge(ei).tail] = 1;
    support[g.edge(ei).head] = 1;
    if (g.edge(ei).is_loop()) out.has_loop = true;
  }

  // BFS spanning forest, roots at the minimum vertex of each component.
  std::vector<std::vector<std::pair<int, int>>> adj(n); // (edge, other end)
  for (int ei : edges) {
    const GainEdge& e = g.edge(ei);
    if (e.is_loop()) continue;
    adj[e.tail].push_back({ei, e.head});
    adj[e.head].push_back({ei, e.tail});
  }
  int comp = 0;
  for (int r = 0; r < n; ++r) {
    if (!support[r] || out.component[r] >= 0) continue;
    out.roots.push_back(r);
    out.component[r] = comp;
    out.potential[r] = 0;
    std::vector<int> queue = {r};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      for (auto [ei, w] : adj[u]) {
        if (out.component[w] >= 0) continue;
        out.component[w] = comp;
        out.potential[w] = s.mul(out.potential[u], g.gain_from(ei, u));
        out.tree_edge[ei] = 1;
        queue.push_back(w);
      }
    }
    ++comp;
  }

  out.balanced = !out.has_loop;
  if (out.balanced) {
    for (int ei : edges) {
      if (out.tree_edge[ei]) continue;
      const GainEdge& e = g.edge(ei);
      // Consistency: psi(e) = phi(tail)^-1 * phi(head).
      if (s.mul(out.potential[e.tail], e.gain) != out.potential[e.head]) {
        out.balanced = false;
        break;
      }
    }
  }
  return out;
}

bool is_balanced(const GainGraph& g, const EdgeSet& edges) {
  if (edges.empty()) throw invalid_argument("balance of an empty edge set is undefined");
  return compute_potentials(g, edges).balanced;
}

GainGraph switch_to_identity(const GainGraph& g) {
  if (g.edge_count() == 0) return g;
  const Potentials pot = compute_potentials(g, g.all_edges());
  if (!pot.balanced) throw invalid_argument("cannot switch an unbalanced graph to identity gains");
  GainGraph out = g;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (pot.component[v] >= 0 && pot.potential[v] != 0)
      out = switch_vertex(out, v, pot.potential[v]);
  return out;
}

bool switching_equivalent(const GainGraph& a, const GainGraph& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  if (a.edge_count() != b.edge_count()) return false;
  if (a.group().order() != b.group().order()) return false;
  const SymmetryGroup& s = a.group();
  const int n = a.vertex_count();

  auto key = [](const GainEdge& e) { return std::minmax(e.tail, e.head); };
  std::map<std::pair<int, int>, int> count_a, count_b;
  for (const auto& e : a.edges()) ++count_a[key(e)];
  for (const auto& e : b.edges()) ++count_b[key(e)];
  if (count_a != count_b) return false;

  auto gains_over = [&](const GainGraph& g, int u, int w) {
    std::multiset<int> out;
    for (const auto& e : g.edges()) {
      if (std::min(e.tail, e.head) != std::min(u, w) ||
          std::max(e.tail, e.head) != std::max(u, w))
        continue;
      if (e.is_loop())
        out.insert(std::min(e.gain, s.inv(e.gain)));
      else
        out.insert((e.tail == u) ? e.gain : s.inv(e.gain));
    }
    return out;
  };

  std::vector<std::vector<std::pair<int, int>>> adj(n); // (edge, other end)
  for (int i = 0; i < a.edge_count(); ++i) {
    const GainEdge& e = a.edge(i);
    if (e.is_loop()) continue;
    adj[e.tail].push_back({i, e.head});
    adj[e.head].push_back({i, e.tail});
  }

  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::tuple<int, int, int>>> bfs; // per comp: (vertex, parent, edge)
  for (int r = 0; r < n; ++r) {
    if (comp[r] >= 0) continue;
    const int c = static_cast<int>(bfs.size());
    bfs.push_back({{r, -1, -1}});
    comp[r] = c;
    for (size_t qi = 0; qi < bfs[c].size(); ++qi) {
      const int u = std::get<0>(bfs[c][qi]);
      for (auto [ei, w] : adj[u])
        if (comp[w] < 0) {
          comp[w] = c;
          bfs[c].push_back({w, u, ei});
        }
    }
  }

  std::vector<int> x(n, 0);
  // Per component, backtracking over the gauge of every vertex along the
  // BFS tree; candidates for a vertex come from matching its tree edge to
  // any parallel b-gain. Components are independent.
  auto verify_component = [&](int c) {
    for (const auto& [u, parent, ei] : bfs[c]) {
      (void)parent;
      (void)ei;
      for (const auto& [w2, p2, e2] : bfs[c]) {
        (void)p2;
        (void)e2;
        if (w2 < u) continue;
        std::multiset<int> mapped;
        for (const auto& e : a.edges()) {
          if (std::min(e.tail, e.head) != std::min(u, w2) ||
              std::max(e.tail, e.head) != std::max(u, w2))
            continue;
          if (e.is_loop()) {
            const int gain = s.mul(s.mul(x[u], e.gain), s.inv(x[u]));
            mapped.insert(std::min(gain, s.inv(gain)));
          } else {
            const int gfrom = (e.tail == u) ? e.gain : s.inv(e.gain);
            mapped.insert(s.mul(s.mul(x[u], gfrom), s.inv(x[w2])));
          }
        }
        if (!mapped.empty() && mapped != gains_over(b, u, w2)) return false;
      }
    }
    return true;
  };

  for (int c = 0; c < static_cast<int>(bfs.size()); ++c) {
    std::function<bool(size_t)> assign = [&](size_t pos) -> bool {
      if (pos == bfs[c].size()) return verify_component(c);
      const auto [v, parent, ei] = bfs[c][pos];
      if (parent < 0) {
        for (int gauge = 0; gauge < s.order(); ++gauge) {
          x[v] = gauge;
          if (assign(pos + 1)) return true;
        }
        return false;
      }
      const int ga = a.gain_from(ei, parent);
      std::set<int> tried;
      for (const auto& e : b.edges()) {
        if (std::min(e.tail, e.head) != std::min(parent, v) ||
            std::max(e.tail, e.head) != std::max(parent, v) || e.is_loop())
          continue;
        const int gb = (e.tail == parent) ? e.gain : s.inv(e.gain);
        // x_parent * ga * x_v^-1 = gb
        const int cand = s.mul(s.inv(gb), s.mul(x[parent], ga));
        if (!tried.insert(cand).second) continue;
        x[v] = cand;
        if (assign(pos + 1)) return true;
      }
      return false;
    };
    if (!assign(0)) return false;
  }
  return true;
}

std::vector<int> local_group(const GainGraph& g, const EdgeSet& edges, int v) {
  const SymmetryGroup& s = g.group();
  bool incident = false;
  for (int ei : edges)
    if (g.edge(ei).tail == v || g.edge(ei).head == v) incident = true;
  if (!incident) return {};

  const Potentials pot = compute_potentials(g, edges);
  const int c = pot.component[v];
  std::vector<int> gens;
  for (int ei : edges) {
    const GainEdge& e = g.edge(ei);
    if (pot.component[e.tail] != c) continue;
    if (e.is_loop()) {
      gens.push_back(s.mul(s.mul(pot.potential[e.tail], e.gain), s.inv(pot.potential[e.tail])));
    } else if (!pot.tree_edge[ei]) {
      gens.push_back(s.mul(s.mul(pot.potential[e.tail], e.gain), s.inv(pot.potential[e.head])));
    }
  }
  return s.closure(gens);
}

CoverGraph::CoverGraph(GroupPtr group, int quotient_n,
                       std::vector<std::pair<int, int>> edges,
                       std::vector<std::vector<int>> fibers)
    : group_(std::move(group)), n0_(quotient_n), edges_(std::move(edges)),
      fibers_(std::move(fibers)) {}

int CoverGraph::act(int x, int vertex) const {
  const auto [g, v] = vertex_label(vertex);
  return vertex_id(group_->mul(x, g), v);
}

CoverGraph cover(const GainGraph& g) {
  const SymmetryGroup& s = g.group();
  const int n = g.vertex_count();
  std::map<std::pair<int, int>, int> index_of;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> fibers(g.edge_count());
  for (int ei = 0; ei < g.edge_count(); ++ei) {
    const GainEdge& e = g.edge(ei);
    for (int x = 0; x < s.order(); ++x) {
      int u = x * n + e.tail;
      int w = s.mul(x, e.gain) * n + e.head;
      if (u == w) throw invalid_argument("identity-gain loop produced a cover loop");
      auto key = std::minmax(u, w);
      auto it = index_of.find(key);
      if (it == index_of.end()) {
        it = index_of.emplace(key, static_cast<int>(edges.size())).first;
        edges.push_back(key);
      } else {
        // Re-lifting an existing pair is only legal inside the same fiber
        // (an involutory loop gain); across fibers the cover would not be
        // simple, which the GainGraph invariants exclude.
        if (std::find(fibers[ei].begin(), fibers[ei].end(), it->second) == fibers[ei].end() &&
            !(e.is_loop() && (e.gain == s.inv(e.gain))))
          throw invalid_argument("cover is not simple");
      }
      if (std::find(fibers[ei].begin(), fibers[ei].end(), it->second) == fibers[ei].end())
        fibers[ei].push_back(it->second);
    }
  }
  return CoverGraph(g.group_ptr(), n, std::move(edges), std::move(fibers));
}

QuotientResult quotient(GroupPtr group, int n,
                        const std::vector<std::pair<int, int>>& edges,
                        const std::vector<std::vector<int>>& action) {
  const SymmetryGroup& s = *group;
  if (static_cast<int>(action.size()) != s.order())
    throw invalid_argument("action must list one permutation per group element");
  for (const auto& perm : action)
    if (static_cast<int>(perm.size()) != n)
      throw invalid_argument("action permutation has wrong size");
  // Identity, homomorphism and freeness checks.
  for (int v = 0; v < n; ++v)
    if (action[0][v] != v) throw invalid_argument("action of the identity must fix vertices");
  for (int a = 0; a < s.order(); ++a) {
    for (int v = 0; v < n; ++v)
      if (a != 0 && action[a][v] == v) throw invalid_argument("action is not free");
    for (int b = 0; b < s.order(); ++b)
      for (int v = 0; v < n; ++v)
        if (action[s.mul(a, b)][v] != action[a][action[b][v]])
          throw invalid_argument("action is not a homomorphism");
  }
  std::set<std::pair<int, int>> edge_set;
  for (auto [u, w] : edges) {
    if (u == w) throw invalid_argument("quotient input must be simple (loop found)");
    edge_set.insert(std::minmax(u, w));
  }
  if (edge_set.size() != edges.size())
    throw invalid_argument("quotient input must be simple (parallel edges)");
  for (int a = 0; a < s.order(); ++a)
    for (auto [u, w] : edge_set)
      if (!edge_set.count(std::minmax(action[a][u], action[a][w])))
        throw invalid_argument("action does not preserve the edge set");

  // Vertex orbits; representative = minimum index.
  std::vector<int> orbit_of(n, -1), representative;
  for (int v = 0; v < n; ++v) {
    if (orbit_of[v] >= 0) continue;
    const int q = static_cast<int>(representative.size());
    representative.push_back(v);
    for (int a = 0; a < s.order(); ++a) orbit_of[action[a][v]] = q;
  }
  // For each vertex, the unique x with x * representative = vertex.
  std::vector<int> gauge(n, -1);
  for (int v = 0; v < n; ++v)
    for (int a = 0; a < s.order(); ++a)
      if (action[a][representative[orbit_of[v]]] == v) gauge[v] = a;

  // Edge orbits -> gain edges.
  std::set<std::pair<int, int>> done;
  std::vector<GainEdge> gain_edges;
  for (auto [u, w] : edge_set) {
    if (done.count({u, w})) continue;
    for (int a = 0; a < s.order(); ++a)
      done.insert(std::minmax(action[a][u], action[a][w]));
    const int qi = orbit_of[u], qj = orbit_of[w];
    // Orient from u's orbit: edge {x i, x psi j} with x = gauge[u].
    const int psi = s.mul(s.inv(gauge[u]), gauge[w]);
    gain_edges.push_back({qi, qj, psi});
  }
  return {GainGraph(group, static_cast<int>(representative.size()), std::move(gain_edges)),
          std::move(representative), std::move(orbit_of)};
}

} // namespace symrig
