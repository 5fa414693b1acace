#include "symrig/sparsity.hpp"

#include <algorithm>
#include <map>

namespace symrig {

CountSpec CountSpec::uniform(int k, int l, int m) {
  if (k < 1 || m < 0 || m > l || l >= 2 * k)
    throw invalid_spec("count spec requires 0 <= m <= l < 2k");
  CountSpec c;
  c.kind = Kind::Uniform;
  c.k = k;
  c.l = l;
  c.m = m;
  return c;
}

CountSpec CountSpec::sphere_i() {
  CountSpec c;
  c.kind = Kind::SphereI;
  c.k = 2;
  c.l = 3;
  c.m = 1;
  c.surface = SurfaceKind::Sphere;
  return c;
}

CountSpec CountSpec::cylinder_r() {
  CountSpec c;
  c.kind = Kind::CylinderR;
  c.k = 2;
  c.l = 2;
  c.m = 1;
  c.surface = SurfaceKind::Cylinder;
  return c;
}

CountSpec CountSpec::subgroup_general(SurfaceKind surface) {
  CountSpec c;
  c.kind = Kind::SubgroupGeneral;
  c.k = 2;
  c.surface = surface;
  return c;
}

std::string to_string(const CountSpec& spec) {
  switch (spec.kind) {
    case CountSpec::Kind::Uniform:
      return std::to_string(spec.k) + "," + std::to_string(spec.l) + "," + std::to_string(spec.m);
    case CountSpec::Kind::SphereI: return "2,3,1i";
    case CountSpec::Kind::CylinderR: return "2,2,1r";
    case CountSpec::Kind::SubgroupGeneral: return "subgroup";
  }
  return "?";
}

namespace {

struct SubgroupClause {
  std::vector<int> members;   // sorted element indices
  std::vector<char> in_h;     // membership bitmap
  std::vector<int> coset_id;  // right-coset index per element
  std::vector<int> coset_rep; // representative element per coset
  int kappa = 0;
  bool whole = false;
};

// Per-subgroup bound parameter for the variant counts.
int kappa_eff(const CountSpec& spec, const SymmetryGroup& s, const std::vector<int>& h) {
  switch (spec.kind) {
    case CountSpec::Kind::SphereI:
      return s.trivial_or_inversion(h) ? 3 : 1;
    case CountSpec::Kind::CylinderR:
      return s.all_z_rotations(h) ? 2 : 1;
    case CountSpec::Kind::SubgroupGeneral:
      return symmetric_type_numeric(spec.surface, s, h);
    default:
      throw invalid_spec("kappa_eff on a uniform count");
  }
}

std::vector<SubgroupClause> build_subgroup_clauses(const CountSpec& spec, const SymmetryGroup& s) {
  std::vector<SubgroupClause> out;
  std::vector<int> whole(s.order());
  for (int i = 0; i < s.order(); ++i) whole[i] = i;
  const int kappa_min = kappa_eff(spec, s, whole);
  for (const auto& h : s.subgroups()) {
    const int kappa = kappa_eff(spec, s, h);
    const bool is_whole = static_cast<int>(h.size()) == s.order();
    // Subgroups at the minimal bound are dominated by the whole-group clause.
    if (!is_whole && kappa <= kappa_min) continue;
    SubgroupClause c;
    c.members = h;
    c.kappa = kappa;
    c.whole = is_whole;
    c.in_h.assign(s.order(), 0);
    for (int g : h) c.in_h[g] = 1;
    c.coset_id.assign(s.order(), -1);
    for (int g = 0; g < s.order(); ++g) {
      if (c.coset_id[g] >= 0) continue;
      const int id = static_cast<int>(c.coset_rep.size());
      c.coset_rep.push_back(g);
      for (int h_el : h) c.coset_id[s.mul(h_el, g)] = id;
    }
    out.push_back(std::move(c));
  }
  return out;
}

struct Enumerator {
  const GainGraph& g;
  const SymmetryGroup& s;
  const CountSpec& spec;
  const SparsityLimits& limits;
  long long budget = 0;

  std::vector<SubgroupClause> subgroup_clauses;
  std::optional<Violation> violation;

  explicit Enumerator(const GainGraph& graph, const CountSpec& sp, const SparsityLimits& lim)
      : g(graph), s(graph.group()), spec(sp), limits(lim) {
    if (spec.kind != CountSpec::Kind::Uniform)
      subgroup_clauses = build_subgroup_clauses(spec, s);
  }

  void charge(long long amount) {
    budget += amount;
    if (budget > limits.max_evaluations)
      throw scale_limit("sparsity oracle budget exceeded");
  }

  // Components of an edge subset; returns one violation check per component.
  bool component_violates(const EdgeSet& subset, int per_vertex, int bound_sub,
                          Violation::Clause clause, const std::vector<int>& subgroup) {
    if (subset.empty()) return false;
    const int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> comp_edges;
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int ei : subset) {
      const GainEdge& e = g.edge(ei);
      if (!e.is_loop()) {
        adj[e.tail].push_back({ei, e.head});
        adj[e.head].push_back({ei, e.tail});
      }
    }
    std::vector<char> in_subset_vertex(n, 0);
    for (int ei : subset) {
      in_subset_vertex[g.edge(ei).tail] = 1;
      in_subset_vertex[g.edge(ei).head] = 1;
    }
    int comps = 0;
    for (int r = 0; r < n; ++r) {
      if (!in_subset_vertex[r] || comp[r] >= 0) continue;
      comp[r] = comps++;
      std::vector<int> q = {r};
      for (size_t qi = 0; qi < q.size(); ++qi)
        for (auto [ei, w] : adj[q[qi]])
          if (comp[w] < 0) {
            comp[w] = comp[r];
            q.push_back(w);
          }
    }
    comp_edges.resize(comps);
    std::vector<int> support(comps, 0);
    for (int ei : subset) comp_edges[comp[g.edge(ei).tail]].push_back(ei);
    for (int v = 0; v < n; ++v)
      if (in_subset_vertex[v]) ++support[comp[v]];
    for (int c = 0; c < comps; ++c) {
      const int bound = per_vertex * support[c] - bound_sub;
      if (static_cast<int>(comp_edges[c].size()) > bound) {
        Violation v;
        v.edges = comp_edges[c];
        v.vertex_support_size = support[c];
        v.bound_used = bound;
        v.clause = clause;
        v.subgroup = subgroup;
        violation = std::move(v);
        return true;
      }
    }
    return false;
  }

  // Enumerate potentials on the (connected, sorted) vertex list, values
  // drawn from value_count symbols, root fixed to symbol 0; call the
  // functor with the assignment. Returns true when a violation was found.
  template <typename Check>
  bool enumerate_assignments(const std::vector<int>& verts, int value_count, Check&& check) {
    const int t = static_cast<int>(verts.size());
    std::vector<int> value(g.vertex_count(), 0);
    std::vector<int> digits(t > 0 ? t - 1 : 0, 0);
    while (true) {
      charge(1);
      for (int i = 1; i < t; ++i) value[verts[i]] = digits[i - 1];
      if (check(value)) return true;
      int pos = 0;
      while (pos < t - 1) {
        if (++digits[pos] < value_count) break;
        digits[pos] = 0;
        ++pos;
      }
      if (pos >= t - 1) break;
    }
    return false;
  }

  bool run() {
    const int n = g.vertex_count();
    if (n > limits.max_vertices)
      throw scale_limit("sparsity oracle vertex cap exceeded");
    if (n == 0) return true;
    if (n >= 31) throw scale_limit("sparsity oracle vertex cap exceeded");

    // Adjacency bitmasks of the underlying graph.
    std::vector<unsigned> nbr(n, 0);
    for (const auto& e : g.edges()) {
      nbr[e.tail] |= 1u << e.head;
      nbr[e.head] |= 1u << e.tail;
    }

    const bool uniform = spec.kind == CountSpec::Kind::Uniform;
    for (unsigned w = 1; w < (1u << n); ++w) {
      charge(1);
      // Induced subgraph must be connected (component-wise bounds imply
      // the bounds for disconnected sets).
      std::vector<int> verts;
      for (int v = 0; v < n; ++v)
        if (w & (1u << v)) verts.push_back(v);
      {
        unsigned seen = 1u << verts[0];
        std::vector<int> q = {verts[0]};
        for (size_t qi = 0; qi < q.size(); ++qi) {
          unsigned reach = nbr[q[qi]] & w & ~seen;
          while (reach) {
            const int v = __builtin_ctz(reach);
            reach &= reach - 1;
            seen |= 1u << v;
            q.push_back(v);
          }
        }
        if (seen != w) continue;
      }

      EdgeSet induced;
      for (int ei = 0; ei < g.edge_count(); ++ei) {
        const GainEdge& e = g.edge(ei);
        if ((w & (1u << e.tail)) && (w & (1u << e.head))) induced.push_back(ei);
      }
      if (induced.empty()) continue;
      const int size = static_cast<int>(verts.size());
      // A connected induced subgraph with at least one edge spans its
      // vertex set, so |support| = |W| below.
      if (size > 1) {
        bool spanning = true;
        for (int v : verts) {
          bool touched = false;
          for (int ei : induced) {
            const GainEdge& e = g.edge(ei);
            if (e.tail == v || e.head == v) touched = true;
          }
          if (!touched) spanning = false;
        }
        if (!spanning) continue; // isolated vertex: handled at a smaller subset
      }

      if (uniform) {
        // General clause.
        if (static_cast<int>(induced.size()) > spec.k * size - spec.m) {
          Violation v;
          v.edges = induced;
          v.vertex_support_size = size;
          v.bound_used = spec.k * size - spec.m;
          v.clause = Violation::Clause::General;
          violation = std::move(v);
          return false;
        }
        // Balanced clause, gated: no consistent subset can beat |E(W)|.
        if (spec.l > spec.m && static_cast<int>(induced.size()) > spec.k * size - spec.l) {
          const bool bad = enumerate_assignments(verts, s.order(), [&](const std::vector<int>& phi) {
            EdgeSet consistent;
            for (int ei : induced) {
              const GainEdge& e = g.edge(ei);
              if (e.is_loop()) continue;
              if (s.mul(phi[e.tail], e.gain) == phi[e.head]) consistent.push_back(ei);
            }
            return component_violates(consistent, spec.k, spec.l, Violation::Clause::Balanced, {});
          });
          if (bad) return false;
        }
      } else {
        for (const auto& clause : subgroup_clauses) {
          const int bound = 2 * size - clause.kappa;
          if (static_cast<int>(induced.size()) <= bound) continue;
          if (clause.whole) {
            Violation v;
            v.edges = induced;
            v.vertex_support_size = size;
            v.bound_used = bound;
            v.clause = Violation::Clause::Subgroup;
            v.subgroup = clause.members;
            violation = std::move(v);
            return false;
          }
          const int cosets = static_cast<int>(clause.coset_rep.size());
          const bool bad = enumerate_assignments(verts, cosets, [&](const std::vector<int>& phi) {
            EdgeSet consistent;
            for (int ei : induced) {
              const GainEdge& e = g.edge(ei);
              const int rep_tail = clause.coset_rep[phi[e.tail]];
              if (e.is_loop()) {
                if (clause.in_h[s.mul(s.mul(rep_tail, e.gain), s.inv(rep_tail))])
                  consistent.push_back(ei);
              } else {
                if (clause.coset_id[s.mul(rep_tail, e.gain)] == phi[e.head])
                  consistent.push_back(ei);
              }
            }
            return component_violates(consistent, 2, clause.kappa, Violation::Clause::Subgroup,
                                      clause.members);
          });
          if (bad) return false;
        }
      }
    }
    return true;
  }
};

} // namespace

SparsityResult is_gain_sparse(const GainGraph& g, const CountSpec& spec,
                              const SparsityLimits& limits) {
  if (spec.kind != CountSpec::Kind::Uniform) {
    // Variant counts are tied to the gain group via the subgroup lattice;
    // nothing else to check here, the clauses adapt to any finite group.
  }
  Enumerator e(g, spec, limits);
  const bool sparse = e.run();
  SparsityResult result;
  result.sparse = sparse;
  result.violation = std::move(e.violation);
  return result;
}

int tight_edge_target(const GainGraph& g, const CountSpec& spec) {
  switch (spec.kind) {
    case CountSpec::Kind::Uniform:
      return spec.k * g.vertex_count() - spec.m;
    case CountSpec::Kind::SphereI:
    case CountSpec::Kind::CylinderR:
      return 2 * g.vertex_count() - 1;
    case CountSpec::Kind::SubgroupGeneral:
      return 2 * g.vertex_count() - symmetric_type_numeric(spec.surface, g.group());
  }
  return 0;
}

bool is_gain_tight(const GainGraph& g, const CountSpec& spec, const SparsityLimits& limits) {
  if (g.vertex_count() == 0) throw invalid_argument("tightness of the empty graph is undefined");
  if (g.edge_count() != tight_edge_target(g, spec)) return false;
  return is_gain_sparse(g, spec, limits).sparse;
}

CoverSparsityResult is_cover_sparse(int n, const std::vector<std::pair<int, int>>& edges,
                                    int k, int l, const SparsityLimits& limits) {
  if (n > limits.max_vertices || n >= 31) throw scale_limit("cover sparsity vertex cap exceeded");
  for (auto [u, w] : edges)
    if (u == w) throw invalid_argument("cover sparsity expects a simple graph");
  CoverSparsityResult result;
  result.sparse = true;
  long long budget = 0;
  for (unsigned w = 1; w < (1u << n); ++w) {
    if (++budget > limits.max_evaluations) throw scale_limit("cover sparsity budget exceeded");
    int count = 0, verts = __builtin_popcount(w);
    for (auto [u, v] : edges)
      if ((w & (1u << u)) && (w & (1u << v))) ++count;
    if (count > 0 && count > k * verts - l) {
      result.sparse = false;
      for (int v = 0; v < n; ++v)
        if (w & (1u << v)) result.violating_vertices.push_back(v);
      return result;
    }
  }
  return result;
}

CountSpec maxwell_count(SurfaceKind surface, const GroupSpec& group) {
  // m = 1 parametric groups coincide with smaller families.
  if (group.m == 1) {
    switch (group.kind) {
      case GroupKind::Cmh: return maxwell_count(surface, GroupSpec::Cs_horizontal());
      case GroupKind::S2m: return maxwell_count(surface, GroupSpec::Ci());
      case GroupKind::Cmv: return maxwell_count(surface, GroupSpec::Cs_containing(group.angle));
      case GroupKind::Dm: return maxwell_count(surface, GroupSpec::C2_perp(group.angle));
      case GroupKind::Cm:
        // Trivial symmetry: the quotient is the graph itself.
        switch (surface) {
          case SurfaceKind::Sphere: return CountSpec::uniform(2, 3, 3);
          case SurfaceKind::Cylinder: return CountSpec::uniform(2, 2, 2);
          case SurfaceKind::Cone: return CountSpec::uniform(2, 1, 1);
        }
        break;
      default:
        break;
    }
  }
  switch (surface) {
    case SurfaceKind::Sphere:
      switch (group.kind) {
        case GroupKind::Ci: return CountSpec::uniform(2, 3, 3);
        case GroupKind::Cm:
        case GroupKind::C2_perp:
        case GroupKind::Cs_containing:
        case GroupKind::Cs_horizontal:
          return CountSpec::uniform(2, 3, 1);
        case GroupKind::Cmh:
          return group.m % 2 == 1 ? CountSpec::uniform(2, 3, 1) : CountSpec::sphere_i();
        case GroupKind::S2m:
          return group.m % 2 == 0 ? CountSpec::uniform(2, 3, 1) : CountSpec::sphere_i();
        case GroupKind::Cmv:
        case GroupKind::Dm:
          return CountSpec::subgroup_general(surface);
      }
      break;
    case SurfaceKind::Cylinder:
      switch (group.kind) {
        case GroupKind::Cm: return CountSpec::uniform(2, 2, 2);
        case GroupKind::Cs_containing:
        case GroupKind::Cs_horizontal:
        case GroupKind::Ci:
          return CountSpec::uniform(2, 2, 1);
        case GroupKind::C2_perp: return CountSpec::uniform(2, 2, 0);
        case GroupKind::Cmh:
        case GroupKind::Cmv:
        case GroupKind::S2m:
          return CountSpec::cylinder_r();
        case GroupKind::Dm: return CountSpec::subgroup_general(surface);
      }
      break;
    case SurfaceKind::Cone:
      switch (group.kind) {
        case GroupKind::Cm:
        case GroupKind::Cs_horizontal:
        case GroupKind::Ci:
        case GroupKind::Cmh:
        case GroupKind::S2m:
          return CountSpec::uniform(2, 1, 1);
        case GroupKind::Cs_containing:
        case GroupKind::C2_perp:
          return CountSpec::uniform(2, 1, 0);
        case GroupKind::Cmv:
        case GroupKind::Dm:
          return CountSpec::subgroup_general(surface);
      }
      break;
  }
  throw unsupported("no count dispatch for " + to_string(group) + " on " + to_string(surface));
}

bool maxwell_necessary(const GainGraph& g, SurfaceKind surface, const SparsityLimits& limits) {
  const CountSpec spec = maxwell_count(surface, g.group().spec());
  return is_gain_tight(g, spec, limits);
}

} // namespace symrig
