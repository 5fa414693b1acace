#include "symrig/moves.hpp"

#include <algorithm>
#include <set>

namespace symrig {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw invalid_argument(msg);
}

// Insert a vertex label: labels >= pos shift up by one.
void shift_labels_up(std::vector<GainEdge>& edges, int pos) {
  for (auto& e : edges) {
    if (e.tail >= pos) ++e.tail;
    if (e.head >= pos) ++e.head;
  }
}

int shifted_up(int v, int pos) { return v >= pos ? v + 1 : v; }

// Insert edges at their final positions (ascending with the added order;
// empty positions append).
void insert_edges(std::vector<GainEdge>& edges, const std::vector<GainEdge>& added,
                  const std::vector<int>& positions) {
  if (positions.empty()) {
    edges.insert(edges.end(), added.begin(), added.end());
    return;
  }
  require(positions.size() == added.size(), "edge position list has wrong size");
  for (size_t i = 0; i + 1 < positions.size(); ++i)
    require(positions[i] < positions[i + 1], "edge positions must be ascending");
  for (size_t i = 0; i < added.size(); ++i) {
    require(positions[i] >= 0 && positions[i] <= static_cast<int>(edges.size()),
            "edge position out of range");
    edges.insert(edges.begin() + positions[i], added[i]);
  }
}

// Gain of `e` read from its far endpoint towards `nv`.
int gain_towards(const SymmetryGroup& s, const GainEdge& e, int nv) {
  require(e.tail == nv || e.head == nv, "added edge not incident to the new vertex");
  return e.head == nv ? e.gain : s.inv(e.gain);
}

int far_endpoint(const GainEdge& e, int nv) { return e.tail == nv ? e.head : e.tail; }

GainGraph switch_corners(GainGraph g, const std::vector<int>& corners,
                         const std::vector<int>& unswitch) {
  if (unswitch.empty()) return g;
  require(unswitch.size() == corners.size(), "unswitch list has wrong size");
  for (size_t c = 0; c < corners.size(); ++c)
    if (unswitch[c] != 0) g = switch_vertex(g, corners[c], unswitch[c]);
  return g;
}

} // namespace

bool same_graph(const GainGraph& a, const GainGraph& b) {
  if (to_string(a.group().spec()) != to_string(b.group().spec())) return false;
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  for (int i = 0; i < a.edge_count(); ++i) {
    const GainEdge &ea = a.edge(i), &eb = b.edge(i);
    if (ea.tail != eb.tail || ea.head != eb.head || ea.gain != eb.gain) return false;
  }
  return true;
}

GainGraph base_K1(GroupPtr group) { return GainGraph(std::move(group), 1, {}); }

GainGraph base_K2(GroupPtr group, int gain) {
  return GainGraph(std::move(group), 2, {{0, 1, gain}});
}

GainGraph base_K1_loop(GroupPtr group, int gain) {
  return GainGraph(std::move(group), 1, {{0, 0, gain}});
}

GainGraph base_K4_plus_e(GroupPtr group, int gain, bool loop) {
  std::vector<GainEdge> edges;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) edges.push_back({i, j, 0});
  if (loop)
    edges.push_back({0, 0, gain});
  else
    edges.push_back({0, 1, gain});
  return GainGraph(std::move(group), 4, std::move(edges));
}

GainGraph base_K5_minus_e(GroupPtr group) {
  std::vector<GainEdge> edges;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (!(i == 3 && j == 4)) edges.push_back({i, j, 0});
  return GainGraph(std::move(group), 5, std::move(edges));
}

Move make_h1a(const GainGraph& g, int a, int b, int g1, int g2) {
  Move m;
  m.kind = Move::Kind::H1a;
  m.added = {{a, g.vertex_count(), g1}, {b, g.vertex_count(), g2}};
  return m;
}

Move make_h1b(const GainGraph& g, int a, int g1, int g2) {
  Move m;
  m.kind = Move::Kind::H1b;
  m.added = {{a, g.vertex_count(), g1}, {a, g.vertex_count(), g2}};
  return m;
}

Move make_h1c(const GainGraph& g, int a, int g1, int loop_gain) {
  Move m;
  m.kind = Move::Kind::H1c;
  const int nv = g.vertex_count();
  m.added = {{a, nv, g1}, {nv, nv, loop_gain}};
  return m;
}

Move make_h2(const GainGraph& g, int edge, int g1, int z, int g3) {
  if (edge < 0 || edge >= g.edge_count()) throw invalid_argument("H2 edge out of range");
  const SymmetryGroup& s = g.group();
  const GainEdge e = g.edge(edge);
  const int nv = g.vertex_count();
  Move m;
  const int g2 = s.mul(s.inv(e.gain), g1); // g1 * g2^-1 = psi(e)
  if (e.is_loop())
    m.kind = z == e.tail ? Move::Kind::H2d : Move::Kind::H2c;
  else
    m.kind = (z == e.tail || z == e.head) ? Move::Kind::H2b : Move::Kind::H2a;
  m.edge = edge;
  m.added = {{e.tail, nv, g1}, {e.head, nv, g2}, {z, nv, g3}};
  return m;
}

Move make_vertex_to_k4(const GainGraph& g, int v, std::vector<int> reattach) {
  Move m;
  m.kind = Move::Kind::VertexToK4;
  const int n = g.vertex_count();
  m.corners = {v, n, n + 1, n + 2};
  m.reattach = std::move(reattach);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) m.added.push_back({m.corners[i], m.corners[j], 0});
  return m;
}

Move make_vertex_to_4cycle(const GainGraph& g, int v, int edge_a, int edge_b,
                           std::vector<int> reattach) {
  Move m;
  m.kind = Move::Kind::VertexTo4Cycle;
  m.v = v;
  m.edge_a = edge_a;
  m.edge_b = edge_b;
  m.reattach = std::move(reattach);
  const int twin = g.vertex_count();
  for (int ei : {edge_a, edge_b}) {
    GainEdge dup = g.edge(ei);
    (dup.tail == v ? dup.tail : dup.head) = twin;
    m.added.push_back(dup);
  }
  return m;
}

Move make_edge_join(const GainGraph& g, MoveScript joined_script, int a, int b_local, int gain) {
  Move m;
  m.kind = Move::Kind::EdgeJoin;
  m.joined = std::make_shared<const MoveScript>(std::move(joined_script));
  m.added = {{a, g.vertex_count() + b_local, gain}};
  return m;
}

GainGraph apply(const GainGraph& g, const Move& move) {
  const SymmetryGroup& s = g.group();
  const int n = g.vertex_count();

  switch (move.kind) {
    case Move::Kind::H1a:
    case Move::Kind::H1b:
    case Move::Kind::H1c: {
      const int nv = move.new_vertex < 0 ? n : move.new_vertex;
      require(nv >= 0 && nv <= n, "vertex slot out of range");
      require(move.added.size() == 2, "H1 adds exactly two edges");
      std::vector<GainEdge> edges = g.edges();
      shift_labels_up(edges, nv);
      int loops = 0;
      std::vector<int> far;
      for (const auto& e : move.added) {
        if (e.is_loop()) {
          require(e.tail == nv, "H1 loop must sit at the new vertex");
          ++loops;
        } else {
          far.push_back(far_endpoint(e, nv));
          require(far.back() >= 0 && far.back() <= n && far.back() != nv,
                  "H1 edge endpoint out of range");
        }
      }
      if (move.kind == Move::Kind::H1a)
        require(loops == 0 && far.size() == 2 && far[0] != far[1],
                "H1a needs two distinct neighbours");
      if (move.kind == Move::Kind::H1b)
        require(loops == 0 && far.size() == 2 && far[0] == far[1],
                "H1b needs two parallel edges");
      if (move.kind == Move::Kind::H1c) require(loops == 1, "H1c needs one loop");
      insert_edges(edges, move.added, move.new_edges);
      return GainGraph(g.group_ptr(), n + 1, std::move(edges));
    }

    case Move::Kind::H2a:
    case Move::Kind::H2b:
    case Move::Kind::H2c:
    case Move::Kind::H2d: {
      require(move.edge >= 0 && move.edge < g.edge_count(), "H2 edge out of range");
      require(move.added.size() == 3, "H2 adds exactly three edges");
      const GainEdge del = g.edge(move.edge);
      const int nv = move.new_vertex < 0 ? n : move.new_vertex;
      require(nv >= 0 && nv <= n, "vertex slot out of range");
      std::vector<GainEdge> edges = g.edges();
      edges.erase(edges.begin() + move.edge);
      shift_labels_up(edges, nv);
      const int del_tail = shifted_up(del.tail, nv);
      const int del_head = shifted_up(del.head, nv);
      // Some ordered pair of added edges must subdivide the deleted edge.
      bool subdivides = false;
      int third = -1;
      for (int x = 0; x < 3 && !subdivides; ++x)
        for (int y = 0; y < 3 && !subdivides; ++y) {
          if (x == y) continue;
          const GainEdge &ex = move.added[x], &ey = move.added[y];
          if (ex.is_loop() || ey.is_loop()) continue;
          if (far_endpoint(ex, nv) != del_tail || far_endpoint(ey, nv) != del_head) continue;
          if (s.mul(gain_towards(s, ex, nv), s.inv(gain_towards(s, ey, nv))) != del.gain)
            continue;
          subdivides = true;
          third = 3 - x - y;
        }
      require(subdivides, "H2 subdivision gains must compose to the deleted gain");
      const GainEdge& e3 = move.added[third];
      require(!e3.is_loop(), "H2 third edge cannot be a loop");
      const int z = far_endpoint(e3, nv);
      const bool del_loop = del.is_loop();
      const bool z_on_edge = z == del_tail || z == del_head;
      switch (move.kind) {
        case Move::Kind::H2a: require(!del_loop && !z_on_edge, "H2a shape mismatch"); break;
        case Move::Kind::H2b: require(!del_loop && z_on_edge, "H2b shape mismatch"); break;
        case Move::Kind::H2c: require(del_loop && !z_on_edge, "H2c shape mismatch"); break;
        default: require(del_loop && z_on_edge, "H2d shape mismatch"); break;
      }
      insert_edges(edges, move.added, move.new_edges);
      return GainGraph(g.group_ptr(), n + 1, std::move(edges));
    }

    case Move::Kind::VertexToK4: {
      std::vector<int> corners = move.corners;
      if (corners.empty()) {
        require(move.v >= 0, "vertex-to-K4 needs a vertex");
        corners = {move.v, n, n + 1, n + 2};
      }
      require(corners.size() == 4, "vertex-to-K4 needs four corners");
      const int v = corners[0];
      require(v >= 0 && v < n, "vertex-to-K4 vertex out of range");
      for (int c = 1; c < 4; ++c)
        require(corners[c] > corners[c - 1], "vertex-to-K4 corners must be ascending");
      const std::vector<int> incident = g.incident_edges(v);
      require(move.reattach.size() == incident.size(),
              "vertex-to-K4 reattachment map has wrong size");
      std::vector<GainEdge> edges = g.edges();
      for (int c = 1; c < 4; ++c) shift_labels_up(edges, corners[c]);
      for (size_t i = 0; i < incident.size(); ++i) {
        const int t = move.reattach[i];
        require(t >= 0 && t < 4, "vertex-to-K4 reattachment target out of range");
        GainEdge& e = edges[incident[i]];
        if (e.tail == v && e.head == v) {
          e.tail = e.head = corners[t];
        } else if (e.tail == v) {
          e.tail = corners[t];
        } else {
          e.head = corners[t];
        }
      }
      std::vector<GainEdge> added = move.added;
      if (added.empty())
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) added.push_back({corners[i], corners[j], 0});
      require(added.size() == 6, "vertex-to-K4 inserts six edges");
      std::set<std::pair<int, int>> pairs;
      for (const auto& e : added) {
        require(e.gain == 0, "vertex-to-K4 edges carry the identity gain");
        require(std::count(corners.begin(), corners.end(), e.tail) == 1 &&
                    std::count(corners.begin(), corners.end(), e.head) == 1 && !e.is_loop(),
                "vertex-to-K4 edges must join distinct corners");
        pairs.insert(std::minmax(e.tail, e.head));
      }
      require(pairs.size() == 6, "vertex-to-K4 edges must cover all corner pairs");
      insert_edges(edges, added, move.new_edges);
      GainGraph out(g.group_ptr(), n + 3, std::move(edges));
      return switch_corners(std::move(out), corners, move.unswitch);
    }

    case Move::Kind::VertexTo4Cycle: {
      require(move.v >= 0 && move.v < n, "vertex-to-4-cycle vertex out of range");
      require(move.edge_a >= 0 && move.edge_a < g.edge_count() && move.edge_b >= 0 &&
                  move.edge_b < g.edge_count() && move.edge_a != move.edge_b,
              "vertex-to-4-cycle needs two distinct edges");
      require(move.added.size() == 2, "vertex-to-4-cycle duplicates two edges");
      const GainEdge ea = g.edge(move.edge_a), eb = g.edge(move.edge_b);
      require(!ea.is_loop() && !eb.is_loop(),
              "vertex-to-4-cycle duplicated edges cannot be loops");
      require(ea.tail == move.v || ea.head == move.v, "edge_a not incident to v");
      require(eb.tail == move.v || eb.head == move.v, "edge_b not incident to v");
      const int na = far_endpoint(ea, move.v);
      const int nb = far_endpoint(eb, move.v);
      require(na != nb && na != move.v && nb != move.v,
              "vertex-to-4-cycle neighbours must be distinct");
      const int twin = move.new_vertex < 0 ? n : move.new_vertex;
      require(twin >= 0 && twin <= n, "vertex slot out of range");
      std::vector<int> rest;
      for (int ei : g.incident_edges(move.v))
        if (ei != move.edge_a && ei != move.edge_b) rest.push_back(ei);
      require(move.reattach.size() == rest.size(), "vertex-to-4-cycle partition has wrong size");
      std::vector<GainEdge> edges = g.edges();
      shift_labels_up(edges, twin);
      const int v_post = shifted_up(move.v, twin);
      for (size_t i = 0; i < rest.size(); ++i) {
        require(move.reattach[i] == 0 || move.reattach[i] == 1,
                "vertex-to-4-cycle partition entries must be 0/1");
        if (move.reattach[i] == 0) continue;
        GainEdge& e = edges[rest[i]];
        if (e.tail == v_post && e.head == v_post) {
          e.tail = e.head = twin;
        } else if (e.tail == v_post) {
          e.tail = twin;
        } else {
          e.head = twin;
        }
      }
      // The duplicates must mirror edge_a/edge_b from the same neighbours.
      {
        const int na_post = shifted_up(na, twin), nb_post = shifted_up(nb, twin);
        const SymmetryGroup& grp = s;
        auto matches = [&](const GainEdge& dup, const GainEdge& orig, int far_post) {
          if (dup.is_loop()) return false;
          if (far_endpoint(dup, twin) != far_post) return false;
          const int dup_gain = dup.tail == twin ? grp.inv(dup.gain) : dup.gain;
          const int orig_gain = orig.tail == move.v ? grp.inv(orig.gain) : orig.gain;
          return dup_gain == orig_gain; // both read from the shared neighbour
        };
        const bool direct = matches(move.added[0], ea, na_post) &&
                            matches(move.added[1], eb, nb_post);
        const bool swapped = matches(move.added[0], eb, nb_post) &&
                             matches(move.added[1], ea, na_post);
        require(direct || swapped, "vertex-to-4-cycle duplicates must copy the chosen gains");
      }
      insert_edges(edges, move.added, move.new_edges);
      return GainGraph(g.group_ptr(), n + 1, std::move(edges));
    }

    case Move::Kind::EdgeJoin: {
      require(static_cast<bool>(move.joined), "edge join needs a joined certificate");
      const GainGraph right = replay(*move.joined);
      require(to_string(right.group().spec()) == to_string(s.spec()),
              "edge join requires identical group specs");
      require(move.added.size() == 1, "edge join adds exactly one edge");
      const int total = n + right.vertex_count();
      std::vector<int> right_pos = move.right_vertices;
      if (right_pos.empty())
        for (int i = 0; i < right.vertex_count(); ++i) right_pos.push_back(n + i);
      require(static_cast<int>(right_pos.size()) == right.vertex_count(),
              "edge join vertex placement has wrong size");
      std::vector<int> left_pos;
      {
        std::vector<char> taken(total, 0);
        for (int p : right_pos) {
          require(p >= 0 && p < total && !taken[p], "edge join vertex placement invalid");
          taken[p] = 1;
        }
        for (int p = 0; p < total; ++p)
          if (!taken[p]) left_pos.push_back(p);
      }
      const int total_edges = g.edge_count() + right.edge_count() + 1;
      std::vector<int> right_edge_pos = move.right_edges;
      if (right_edge_pos.empty())
        for (int i = 0; i < right.edge_count(); ++i) right_edge_pos.push_back(g.edge_count() + i);
      const int join_pos = move.new_edges.empty() ? total_edges - 1 : move.new_edges[0];
      require(static_cast<int>(right_edge_pos.size()) == right.edge_count(),
              "edge join edge placement has wrong size");
      std::vector<GainEdge> edges(total_edges);
      std::vector<char> slot_taken(total_edges, 0);
      auto place = [&](int pos, GainEdge e) {
        require(pos >= 0 && pos < total_edges && !slot_taken[pos],
                "edge join edge placement invalid");
        slot_taken[pos] = 1;
        edges[pos] = e;
      };
      for (int i = 0; i < right.edge_count(); ++i) {
        GainEdge e = right.edge(i);
        place(right_edge_pos[i], {right_pos[e.tail], right_pos[e.head], e.gain});
      }
      place(join_pos, move.added[0]);
      int next_left = 0;
      for (int pos = 0; pos < total_edges; ++pos) {
        if (slot_taken[pos]) continue;
        require(next_left < g.edge_count(), "edge join edge placement incomplete");
        GainEdge e = g.edge(next_left++);
        edges[pos] = {left_pos[e.tail], left_pos[e.head], e.gain};
      }
      require(next_left == g.edge_count(), "edge join edge placement incomplete");
      return GainGraph(g.group_ptr(), total, std::move(edges));
    }
  }
  throw invalid_argument("unknown move kind");
}

bool matches_base(const GainGraph& g, MoveScript::BaseKind kind) {
  switch (kind) {
    case MoveScript::BaseKind::K1:
      return g.vertex_count() == 1 && g.edge_count() == 0;
    case MoveScript::BaseKind::K2:
      return g.vertex_count() == 2 && g.edge_count() == 1 && !g.edge(0).is_loop();
    case MoveScript::BaseKind::K1_loop:
      return g.vertex_count() == 1 && g.edge_count() == 1 && g.edge(0).is_loop();
    case MoveScript::BaseKind::K4_plus_e: {
      if (g.vertex_count() != 4 || g.edge_count() != 7) return false;
      for (int extra = 0; extra < 7; ++extra) {
        std::set<std::pair<int, int>> pairs;
        EdgeSet rest;
        bool loops = false;
        for (int i = 0; i < 7; ++i) {
          if (i == extra) continue;
          const GainEdge& e = g.edge(i);
          if (e.is_loop()) loops = true;
          pairs.insert(std::minmax(e.tail, e.head));
          rest.push_back(i);
        }
        if (loops || pairs.size() != 6) continue;
        if (is_balanced(g, rest)) return true;
      }
      return false;
    }
    case MoveScript::BaseKind::K5_minus_e: {
      if (g.vertex_count() != 5 || g.edge_count() != 9) return false;
      std::set<std::pair<int, int>> pairs;
      for (const auto& e : g.edges()) {
        if (e.is_loop()) return false;
        pairs.insert(std::minmax(e.tail, e.head));
      }
      if (pairs.size() != 9) return false;
      return is_balanced(g, g.all_edges());
    }
  }
  return false;
}

std::vector<MoveScript::BaseKind> base_kinds_for(const CountSpec& spec) {
  if (spec.kind != CountSpec::Kind::Uniform || spec.k != 2) return {};
  if (spec.l == 3 && spec.m == 3) return {MoveScript::BaseKind::K2};
  if (spec.l == 3 && spec.m == 1) return {MoveScript::BaseKind::K1_loop};
  if (spec.l == 2 && spec.m == 2) return {MoveScript::BaseKind::K1};
  if (spec.l == 2 && spec.m == 1)
    return {MoveScript::BaseKind::K1_loop, MoveScript::BaseKind::K4_plus_e};
  if (spec.l == 1 && spec.m == 1)
    return {MoveScript::BaseKind::K1_loop, MoveScript::BaseKind::K4_plus_e,
            MoveScript::BaseKind::K5_minus_e};
  return {};
}

namespace {

bool tight_or_false(const GainGraph& g, const CountSpec& spec, const SparsityLimits& limits) {
  if (g.vertex_count() == 0) return false;
  return is_gain_tight(g, spec, limits);
}

// Reduced graph after removing vertex v and the listed edges, optionally
// appending a replacement edge (endpoints in original labels).
std::optional<GainGraph> remove_vertex_with(const GainGraph& g, int v,
                                            const std::vector<int>& drop_edges,
                                            const std::optional<GainEdge>& replacement) {
  std::vector<GainEdge> edges;
  std::vector<char> dropped(g.edge_count(), 0);
  for (int ei : drop_edges) dropped[ei] = 1;
  auto down = [&](int x) { return x > v ? x - 1 : x; };
  for (int i = 0; i < g.edge_count(); ++i) {
    if (dropped[i]) continue;
    GainEdge e = g.edge(i);
    if (e.tail == v || e.head == v) return std::nullopt;
    e.tail = down(e.tail);
    e.head = down(e.head);
    edges.push_back(e);
  }
  if (replacement) {
    GainEdge e = *replacement;
    e.tail = down(e.tail);
    e.head = down(e.head);
    edges.push_back(e);
  }
  try {
    return GainGraph(g.group_ptr(), g.vertex_count() - 1, std::move(edges));
  } catch (const invalid_argument&) {
    return std::nullopt;
  }
}

std::optional<Reduction> try_inverse_h1(const GainGraph& g, int v, const CountSpec& spec,
                                        const SparsityLimits& limits) {
  if (g.vertex_count() <= 1) return std::nullopt;
  std::vector<int> loops, nonloops;
  for (int ei : g.incident_edges(v))
    (g.edge(ei).is_loop() ? loops : nonloops).push_back(ei);
  Move fwd;
  std::vector<int> drop;
  if (loops.empty() && nonloops.size() == 2) {
    const int a = far_endpoint(g.edge(nonloops[0]), v);
    const int b = far_endpoint(g.edge(nonloops[1]), v);
    fwd.kind = a == b ? Move::Kind::H1b : Move::Kind::H1a;
    drop = nonloops;
  } else if (loops.size() == 1 && nonloops.size() == 1) {
    fwd.kind = Move::Kind::H1c;
    drop = {std::min(loops[0], nonloops[0]), std::max(loops[0], nonloops[0])};
  } else {
    return std::nullopt;
  }
  auto reduced = remove_vertex_with(g, v, drop, std::nullopt);
  if (!reduced || !tight_or_false(*reduced, spec, limits)) return std::nullopt;
  fwd.new_vertex = v;
  fwd.new_edges = drop; // ascending by construction
  for (int ei : drop) fwd.added.push_back(g.edge(ei));
  return Reduction{std::move(*reduced), std::move(fwd)};
}

std::optional<Reduction> try_inverse_h2(const GainGraph& g, int v, const CountSpec& spec,
                                        const SparsityLimits& limits) {
  if (g.vertex_count() <= 1) return std::nullopt;
  std::vector<int> loops, nonloops;
  for (int ei : g.incident_edges(v))
    (g.edge(ei).is_loop() ? loops : nonloops).push_back(ei);
  if (!loops.empty() || nonloops.size() != 3) return std::nullopt;
  const SymmetryGroup& s = g.group();

  int other[3], gain_in[3];
  for (int i = 0; i < 3; ++i) {
    const GainEdge& e = g.edge(nonloops[i]);
    other[i] = far_endpoint(e, v);
    gain_in[i] = g.gain_from(nonloops[i], other[i]);
  }

  // Pair (i, j) plays the subdivision role; the replacement gain is forced.
  const int pairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
  for (const auto& p : pairs) {
    const int i = p[0], j = p[1], r = p[2];
    GainEdge repl{other[i], other[j], s.mul(gain_in[i], s.inv(gain_in[j]))};
    if (repl.is_loop() && repl.gain == 0) continue;
    auto reduced = remove_vertex_with(g, v, nonloops, repl);
    if (!reduced || !tight_or_false(*reduced, spec, limits)) continue;
    Move fwd;
    const bool loop_edge = repl.is_loop();
    const bool z_on_edge = other[r] == other[i] || other[r] == other[j];
    if (loop_edge)
      fwd.kind = z_on_edge ? Move::Kind::H2d : Move::Kind::H2c;
    else
      fwd.kind = z_on_edge ? Move::Kind::H2b : Move::Kind::H2a;
    fwd.edge = reduced->edge_count() - 1; // the appended replacement edge
    fwd.new_vertex = v;
    fwd.new_edges = nonloops; // ascending incident order
    for (int ei : nonloops) fwd.added.push_back(g.edge(ei));
    return Reduction{std::move(*reduced), std::move(fwd)};
  }
  return std::nullopt;
}

std::optional<Reduction> try_k4_contraction(const GainGraph& g, const CountSpec& spec,
                                            const SparsityLimits& limits) {
  const int n = g.vertex_count();
  if (n < 4) return std::nullopt;
  for (int w0 = 0; w0 < n; ++w0)
    for (int w1 = w0 + 1; w1 < n; ++w1)
      for (int w2 = w1 + 1; w2 < n; ++w2)
        for (int w3 = w2 + 1; w3 < n; ++w3) {
          const int quad[4] = {w0, w1, w2, w3};
          auto corner_of = [&](int x) {
            for (int c = 0; c < 4; ++c)
              if (quad[c] == x) return c;
            return -1;
          };
          EdgeSet induced;
          std::set<std::pair<int, int>> pairs;
          bool bad = false;
          for (int ei = 0; ei < g.edge_count() && !bad; ++ei) {
            const GainEdge& e = g.edge(ei);
            if (corner_of(e.tail) < 0 || corner_of(e.head) < 0) continue;
            if (e.is_loop()) bad = true;
            induced.push_back(ei);
            pairs.insert(std::minmax(e.tail, e.head));
          }
          if (bad || induced.size() != 6 || pairs.size() != 6) continue;
          if (!is_balanced(g, induced)) continue;

          // Switch the four corners so the K4 carries identity gains, then
          // contract it into w0. The forward move re-gauges the corners back.
          const Potentials pot = compute_potentials(g, induced);
          GainGraph switched = g;
          std::vector<int> unswitch(4, 0);
          for (int c = 0; c < 4; ++c) {
            const int x = pot.potential[quad[c]];
            if (x != 0) {
              switched = switch_vertex(switched, quad[c], x);
              unswitch[c] = g.group().inv(x);
            }
          }
          std::vector<char> drop(g.edge_count(), 0);
          for (int ei : induced) drop[ei] = 1;
          std::vector<GainEdge> edges;
          std::vector<int> sources; // corner per surviving edge at w0
          auto down = [&](int x) {
            int d = x;
            for (int r : {w1, w2, w3})
              if (r < x) --d;
            return d;
          };
          for (int ei = 0; ei < switched.edge_count(); ++ei) {
            if (drop[ei]) continue;
            GainEdge e = switched.edge(ei);
            int source = -1;
            if (e.is_loop()) {
              const int ct = corner_of(e.tail);
              if (ct >= 0) {
                source = ct;
                e.tail = e.head = w0;
              }
            } else {
              const int ct = corner_of(e.tail), ch = corner_of(e.head);
              if (ct >= 0) {
                source = ct;
                e.tail = w0;
              }
              if (ch >= 0) {
                source = ch;
                e.head = w0;
              }
            }
            e.tail = down(e.tail);
            e.head = down(e.head);
            edges.push_back(e);
            if (e.tail == down(w0) || e.head == down(w0))
              sources.push_back(source < 0 ? 0 : source);
          }
          std::optional<GainGraph> reduced;
          try {
            reduced.emplace(g.group_ptr(), n - 3, std::move(edges));
          } catch (const invalid_argument&) {
            continue;
          }
          if (!tight_or_false(*reduced, spec, limits)) continue;

          Move fwd;
          fwd.kind = Move::Kind::VertexToK4;
          fwd.corners = {w0, w1, w2, w3};
          fwd.unswitch = unswitch;
          fwd.reattach = sources; // aligned with the reduced incidence order
          fwd.new_edges = induced;
          for (int ei : induced) fwd.added.push_back(switched.edge(ei));
          return Reduction{std::move(*reduced), std::move(fwd)};
        }
  return std::nullopt;
}

std::optional<Reduction> try_4cycle_contraction(const GainGraph& g, const CountSpec& spec,
                                                const SparsityLimits& limits) {
  const int n = g.vertex_count();
  if (n < 4) return std::nullopt;
  for (int v1 = 0; v1 < n; ++v1)
    for (int v2 = v1 + 1; v2 < n; ++v2) {
      bool adjacent = false;
      for (const auto& e : g.edges())
        if (std::minmax(e.tail, e.head) == std::minmax(v1, v2)) adjacent = true;
      if (adjacent) continue;
      auto id_edge = [&](int x, int y) {
        for (int ei = 0; ei < g.edge_count(); ++ei) {
          const GainEdge& e = g.edge(ei);
          if (e.gain == 0 && std::minmax(e.tail, e.head) == std::minmax(x, y)) return ei;
        }
        return -1;
      };
      for (int a = 0; a < n; ++a) {
        if (a == v1 || a == v2) continue;
        const int ea1 = id_edge(a, v1), ea2 = id_edge(a, v2);
        if (ea1 < 0 || ea2 < 0) continue;
        for (int b = a + 1; b < n; ++b) {
          if (b == v1 || b == v2) continue;
          const int eb1 = id_edge(b, v1), eb2 = id_edge(b, v2);
          if (eb1 < 0 || eb2 < 0) continue;

          std::vector<char> drop(g.edge_count(), 0);
          drop[ea2] = drop[eb2] = 1;
          auto down = [&](int x) { return x > v2 ? x - 1 : x; };
          std::vector<GainEdge> edges;
          std::vector<int> moved; // 1 when the surviving v1-edge came from v2
          for (int ei = 0; ei < g.edge_count(); ++ei) {
            if (drop[ei]) continue;
            GainEdge e = g.edge(ei);
            bool from_v2 = false;
            if (e.is_loop()) {
              if (e.tail == v2) {
                e.tail = e.head = v1;
                from_v2 = true;
              }
            } else {
              if (e.tail == v2) {
                e.tail = v1;
                from_v2 = true;
              }
              if (e.head == v2) {
                e.head = v1;
                from_v2 = true;
              }
            }
            e.tail = down(e.tail);
            e.head = down(e.head);
            edges.push_back(e);
            if (e.tail == down(v1) || e.head == down(v1)) moved.push_back(from_v2 ? 1 : 0);
          }
          std::optional<GainGraph> reduced;
          try {
            reduced.emplace(g.group_ptr(), n - 1, std::move(edges));
          } catch (const invalid_argument&) {
            continue;
          }
          if (!tight_or_false(*reduced, spec, limits)) continue;

          auto reduced_index = [&](int target) {
            int idx = 0;
            for (int ei = 0; ei < g.edge_count(); ++ei) {
              if (drop[ei]) continue;
              if (ei == target) return idx;
              ++idx;
            }
            return -1;
          };
          Move fwd;
          fwd.kind = Move::Kind::VertexTo4Cycle;
          fwd.v = down(v1);
          fwd.new_vertex = v2;
          fwd.edge_a = reduced_index(ea1);
          fwd.edge_b = reduced_index(eb1);
          {
            size_t k = 0;
            for (int ei : reduced->incident_edges(fwd.v)) {
              if (ei == fwd.edge_a || ei == fwd.edge_b) {
                ++k;
                continue;
              }
              fwd.reattach.push_back(moved[k]);
              ++k;
            }
          }
          fwd.new_edges = {std::min(ea2, eb2), std::max(ea2, eb2)};
          for (int ei : fwd.new_edges) fwd.added.push_back(g.edge(ei));
          return Reduction{std::move(*reduced), std::move(fwd)};
        }
      }
    }
  return std::nullopt;
}

std::optional<Split> try_bridge_split(const GainGraph& g, const CountSpec& spec,
                                      const SparsityLimits& limits) {
  if (!(spec.kind == CountSpec::Kind::Uniform && spec.k == 2 && spec.m == 1 && spec.l <= 2))
    return std::nullopt;
  const int n = g.vertex_count();
  for (int ei = 0; ei < g.edge_count(); ++ei) {
    const GainEdge& e = g.edge(ei);
    if (e.is_loop()) continue;
    bool parallel = false;
    for (int ej = 0; ej < g.edge_count(); ++ej)
      if (ej != ei &&
          std::minmax(g.edge(ej).tail, g.edge(ej).head) == std::minmax(e.tail, e.head))
        parallel = true;
    if (parallel) continue;
    std::vector<char> seen(n, 0);
    seen[e.tail] = 1;
    std::vector<int> q = {e.tail};
    for (size_t qi = 0; qi < q.size(); ++qi)
      for (int ej = 0; ej < g.edge_count(); ++ej) {
        if (ej == ei) continue;
        const GainEdge& f = g.edge(ej);
        for (auto [x, y] : {std::pair{f.tail, f.head}, std::pair{f.head, f.tail}})
          if (x == q[qi] && !seen[y]) {
            seen[y] = 1;
            q.push_back(y);
          }
      }
    if (seen[e.head]) continue; // in a cycle, not a bridge

    std::vector<int> left_vs, right_vs;
    for (int v = 0; v < n; ++v) (seen[v] ? left_vs : right_vs).push_back(v);
    auto build_side = [&](const std::vector<int>& vs) {
      std::vector<int> local(n, -1);
      for (size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<int>(i);
      std::vector<GainEdge> edges;
      for (int ej = 0; ej < g.edge_count(); ++ej) {
        if (ej == ei) continue;
        const GainEdge& f = g.edge(ej);
        if (local[f.tail] >= 0 && local[f.head] >= 0)
          edges.push_back({local[f.tail], local[f.head], f.gain});
      }
      return GainGraph(g.group_ptr(), static_cast<int>(vs.size()), std::move(edges));
    };
    GainGraph left = build_side(left_vs);
    GainGraph right = build_side(right_vs);
    if (!tight_or_false(left, spec, limits) || !tight_or_false(right, spec, limits)) continue;
    Split out{std::move(left), std::move(right), left_vs, right_vs, ei};
    return out;
  }
  return std::nullopt;
}

} // namespace

std::optional<ReductionStep> find_admissible_reduction(const GainGraph& g, const CountSpec& spec,
                                                       const SparsityLimits& limits) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (auto r = try_inverse_h1(g, v, spec, limits)) return ReductionStep(std::move(*r));
  for (int v = 0; v < g.vertex_count(); ++v)
    if (auto r = try_inverse_h2(g, v, spec, limits)) return ReductionStep(std::move(*r));
  if (auto r = try_k4_contraction(g, spec, limits)) return ReductionStep(std::move(*r));
  if (auto r = try_4cycle_contraction(g, spec, limits)) return ReductionStep(std::move(*r));
  if (auto s = try_bridge_split(g, spec, limits)) return ReductionStep(std::move(*s));
  return std::nullopt;
}

namespace {

CertifyResult certify_impl(const GainGraph& g, const CountSpec& spec,
                           const SparsityLimits& limits,
                           const std::vector<MoveScript::BaseKind>& bases) {
  for (auto kind : bases)
    if (matches_base(g, kind)) {
      MoveScript script;
      script.base_kind = kind;
      script.base = std::make_shared<GainGraph>(g);
      return {std::move(script), std::nullopt};
    }
  auto step = find_admissible_reduction(g, spec, limits);
  if (!step) return {std::nullopt, g};
  if (auto* red = std::get_if<Reduction>(&*step)) {
    CertifyResult sub = certify_impl(red->reduced, spec, limits, bases);
    if (!sub.script) return sub;
    sub.script->moves.push_back(std::move(red->forward));
    return sub;
  }
  auto& split = std::get<Split>(*step);
  CertifyResult left = certify_impl(split.left, spec, limits, bases);
  if (!left.script) return left;
  CertifyResult right = certify_impl(split.right, spec, limits, bases);
  if (!right.script) return right;
  Move join;
  join.kind = Move::Kind::EdgeJoin;
  join.joined = std::make_shared<const MoveScript>(std::move(*right.script));
  join.added = {g.edge(split.bridge)};
  join.new_edges = {split.bridge};
  join.right_vertices = split.right_vertices;
  for (int ei = 0; ei < g.edge_count(); ++ei) {
    if (ei == split.bridge) continue;
    const GainEdge& e = g.edge(ei);
    const bool in_right = std::binary_search(split.right_vertices.begin(),
                                             split.right_vertices.end(), e.tail);
    if (in_right) join.right_edges.push_back(ei);
  }
  left.script->moves.push_back(std::move(join));
  return left;
}

} // namespace

CertifyResult certify(const GainGraph& g, const CountSpec& spec, const SparsityLimits& limits) {
  const auto bases = base_kinds_for(spec);
  if (bases.empty())
    throw unsupported("no recursive construction for count " + to_string(spec));
  if (spec.kind == CountSpec::Kind::Uniform && spec.l == 2 && spec.m == 1 &&
      g.group().order() != 2)
    throw unsupported("the (2,2,1) construction assumes a group of order 2");
  if (!is_gain_tight(g, spec, limits))
    throw invalid_argument("certify requires a gain-tight input");
  CertifyResult result = certify_impl(g, spec, limits, bases);
  if (result.script && !same_graph(replay(*result.script), g))
    throw error("internal error: certificate replay does not reconstruct the input");
  return result;
}

GainGraph replay(const MoveScript& script, const CountSpec* spec, const SparsityLimits& limits) {
  if (!script.base) throw invalid_argument("script has no base graph");
  if (!matches_base(*script.base, script.base_kind))
    throw invalid_argument("script base graph does not match its declared kind");
  GainGraph g = *script.base;
  auto check = [&](const GainGraph& cur) {
    if (spec && !is_gain_tight(cur, *spec, limits))
      throw invalid_argument("replayed graph is not tight at some step");
  };
  check(g);
  for (const auto& move : script.moves) {
    if (move.kind == Move::Kind::EdgeJoin && spec && move.joined)
      replay(*move.joined, spec, limits); // validate the nested certificate
    g = apply(g, move);
    check(g);
  }
  return g;
}

} // namespace symrig
