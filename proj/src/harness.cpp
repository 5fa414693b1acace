#include "symrig/harness.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "symrig/json_io.hpp"

namespace symrig {

using nlohmann::json;

json Verdict::to_json() const {
  return json{{"config", config},
              {"checks", checks},
              {"agreements", agreements},
              {"agreement_rate", agreement_rate()},
              {"skipped", skipped},
              {"gating", gating},
              {"records", records},
              {"disagreements", disagreements}};
}

namespace {

std::vector<Move::Kind> growth_moves(const CountSpec& spec) {
  using K = Move::Kind;
  if (spec.kind == CountSpec::Kind::Uniform && spec.k == 2) {
    if (spec.l == 3 && spec.m == 3) return {K::H1a, K::H2a};
    if (spec.l == 3 && spec.m == 1)
      return {K::H1a, K::H1b, K::H1c, K::H2a, K::H2b, K::H2c, K::H2d};
    if (spec.l == 2 && spec.m == 2)
      return {K::H1a, K::H1b, K::H2a, K::H2b, K::VertexToK4, K::VertexTo4Cycle};
    if (spec.l == 2 && spec.m == 1)
      return {K::H1a, K::H1b, K::H1c, K::H2a, K::H2b, K::H2c,
              K::VertexToK4, K::VertexTo4Cycle, K::EdgeJoin};
    if (spec.l == 1 && spec.m == 1)
      return {K::H1a, K::H1b, K::H1c, K::H2a, K::H2b, K::H2c, K::H2d,
              K::VertexToK4, K::VertexTo4Cycle, K::EdgeJoin};
  }
  return {K::H1a, K::H1b, K::H1c, K::H2a, K::H2b, K::H2c, K::H2d};
}

std::optional<GainGraph> try_random_move(const GainGraph& g, Move::Kind kind, Rng& rng,
                                         const CountSpec& spec, GroupPtr group, int target,
                                         int depth, const SparsityLimits& limits);

GainGraph random_base(const CountSpec& spec, GroupPtr group, int target, Rng& rng) {
  auto kinds = base_kinds_for(spec);
  const int order = group->order();
  std::vector<MoveScript::BaseKind> usable;
  for (auto k : kinds) {
    const int size = k == MoveScript::BaseKind::K5_minus_e ? 5
                     : k == MoveScript::BaseKind::K4_plus_e ? 4
                     : k == MoveScript::BaseKind::K2        ? 2
                                                            : 1;
    if (size > target) continue;
    if ((k == MoveScript::BaseKind::K1_loop || k == MoveScript::BaseKind::K4_plus_e) && order < 2)
      continue;
    usable.push_back(k);
  }
  if (usable.empty()) throw unsupported("no base graph fits the requested size");
  const auto kind = usable[rng.below(static_cast<int>(usable.size()))];
  switch (kind) {
    case MoveScript::BaseKind::K1: return base_K1(group);
    case MoveScript::BaseKind::K2: return base_K2(group, rng.below(order));
    case MoveScript::BaseKind::K1_loop: return base_K1_loop(group, 1 + rng.below(order - 1));
    case MoveScript::BaseKind::K4_plus_e:
      return base_K4_plus_e(group, 1 + rng.below(order - 1), rng.coin());
    case MoveScript::BaseKind::K5_minus_e: return base_K5_minus_e(group);
  }
  throw unsupported("unreachable base kind");
}

std::optional<GainGraph> apply_if_tight(const GainGraph& g, const Move& m, const CountSpec& spec,
                                        const SparsityLimits& limits) {
  try {
    GainGraph out = apply(g, m);
    if (!is_gain_tight(out, spec, limits)) return std::nullopt;
    return out;
  } catch (const invalid_argument&) {
    return std::nullopt;
  }
}

std::optional<GainGraph> try_random_move(const GainGraph& g, Move::Kind kind, Rng& rng,
                                         const CountSpec& spec, GroupPtr group, int target,
                                         int depth, const SparsityLimits& limits) {
  const SymmetryGroup& s = g.group();
  const int n = g.vertex_count();
  const int order = s.order();
  switch (kind) {
    case Move::Kind::H1a: {
      if (n < 2) return std::nullopt;
      const int a = rng.below(n), b = rng.below(n);
      if (a == b) return std::nullopt;
      return apply_if_tight(g, make_h1a(g, a, b, rng.below(order), rng.below(order)), spec,
                            limits);
    }
    case Move::Kind::H1b: {
      if (order < 2) return std::nullopt;
      const int g1 = rng.below(order), g2 = rng.below(order);
      if (g1 == g2) return std::nullopt;
      return apply_if_tight(g, make_h1b(g, rng.below(n), g1, g2), spec, limits);
    }
    case Move::Kind::H1c: {
      if (order < 2) return std::nullopt;
      return apply_if_tight(
          g, make_h1c(g, rng.below(n), rng.below(order), 1 + rng.below(order - 1)), spec,
          limits);
    }
    case Move::Kind::H2a:
    case Move::Kind::H2b:
    case Move::Kind::H2c:
    case Move::Kind::H2d: {
      const bool want_loop = kind == Move::Kind::H2c || kind == Move::Kind::H2d;
      std::vector<int> candidates;
      for (int ei = 0; ei < g.edge_count(); ++ei)
        if (g.edge(ei).is_loop() == want_loop) candidates.push_back(ei);
      if (candidates.empty()) return std::nullopt;
      const int edge = candidates[rng.below(static_cast<int>(candidates.size()))];
      const GainEdge& e = g.edge(edge);
      int z;
      if (kind == Move::Kind::H2a) {
        if (n < 3) return std::nullopt;
        z = rng.below(n);
        if (z == e.tail || z == e.head) return std::nullopt;
      } else if (kind == Move::Kind::H2b) {
        z = rng.coin() ? e.tail : e.head;
      } else if (kind == Move::Kind::H2c) {
        if (n < 2) return std::nullopt;
        z = rng.below(n);
        if (z == e.tail) return std::nullopt;
      } else {
        z = e.tail;
      }
      return apply_if_tight(g, make_h2(g, edge, rng.below(order), z, rng.below(order)), spec,
                            limits);
    }
    case Move::Kind::VertexToK4: {
      const int v = rng.below(n);
      std::vector<int> reattach;
      for (size_t i = 0; i < g.incident_edges(v).size(); ++i) reattach.push_back(rng.below(4));
      return apply_if_tight(g, make_vertex_to_k4(g, v, std::move(reattach)), spec, limits);
    }
    case Move::Kind::VertexTo4Cycle: {
      const int v = rng.below(n);
      std::vector<int> nonloops;
      for (int ei : g.incident_edges(v))
        if (!g.edge(ei).is_loop()) nonloops.push_back(ei);
      if (nonloops.size() < 2) return std::nullopt;
      const int ea = nonloops[rng.below(static_cast<int>(nonloops.size()))];
      const int eb = nonloops[rng.below(static_cast<int>(nonloops.size()))];
      if (ea == eb) return std::nullopt;
      const auto far = [&](int ei) {
        const GainEdge& e = g.edge(ei);
        return e.tail == v ? e.head : e.tail;
      };
      if (far(ea) == far(eb)) return std::nullopt;
      std::vector<int> reattach;
      for (int ei : g.incident_edges(v))
        if (ei != ea && ei != eb) reattach.push_back(rng.below(2));
      return apply_if_tight(g, make_vertex_to_4cycle(g, v, ea, eb, std::move(reattach)), spec,
                            limits);
    }
    case Move::Kind::EdgeJoin: {
      if (depth >= 2) return std::nullopt;
      const int room = target - n;
      if (room < 1) return std::nullopt;
      const int size_b = 1 + rng.below(room);
      GainGraph other = random_tight_graph_by_moves(spec, group, size_b, rng, limits);
      // EdgeJoin replays its payload, so certify the component to obtain a
      // replayable script for it.
      CertifyResult cert = certify(other, spec, limits);
      if (!cert.script) return std::nullopt;
      return apply_if_tight(g,
                            make_edge_join(g, std::move(*cert.script), rng.below(n),
                                           rng.below(other.vertex_count()), rng.below(order)),
                            spec, limits);
    }
  }
  return std::nullopt;
}

} // namespace

GainGraph random_tight_graph_by_moves(const CountSpec& spec, GroupPtr group,
                                      int target_vertices, Rng& rng,
                                      const SparsityLimits& limits) {
  const auto moves = growth_moves(spec);
  for (int restart = 0; restart < 12; ++restart) {
    GainGraph g = random_base(spec, group, target_vertices, rng);
    int stuck = 0;
    while (g.vertex_count() < target_vertices && stuck < 160) {
      const auto kind = moves[rng.below(static_cast<int>(moves.size()))];
      if (kind == Move::Kind::VertexToK4 && target_vertices - g.vertex_count() < 3) {
        ++stuck;
        continue;
      }
      auto next = try_random_move(g, kind, rng, spec, group, target_vertices, 0, limits);
      if (next) {
        g = std::move(*next);
        stuck = 0;
      } else {
        ++stuck;
      }
    }
    if (g.vertex_count() == target_vertices) return g;
  }
  throw error("random growth failed to reach the target size");
}

std::optional<GainGraph> random_tight_graph_by_edges(const CountSpec& spec, GroupPtr group,
                                                     int vertices, Rng& rng, bool allow_loops,
                                                     const SparsityLimits& limits) {
  const SymmetryGroup& s = *group;
  GainGraph probe(group, vertices, {});
  const int target = tight_edge_target(probe, spec);
  if (target < 0) return std::nullopt;
  std::vector<GainEdge> pool;
  for (int i = 0; i < vertices; ++i) {
    for (int j = i + 1; j < vertices; ++j)
      for (int gain = 0; gain < s.order(); ++gain) pool.push_back({i, j, gain});
    if (allow_loops)
      for (int gain = 1; gain < s.order(); ++gain)
        if (gain <= s.inv(gain)) pool.push_back({i, i, gain});
  }
  for (int restart = 0; restart < 20; ++restart) {
    for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i)
      std::swap(pool[i], pool[rng.below(i + 1)]);
    std::vector<GainEdge> chosen;
    for (const auto& cand : pool) {
      if (static_cast<int>(chosen.size()) == target) break;
      std::vector<GainEdge> attempt = chosen;
      attempt.push_back(cand);
      try {
        GainGraph g(group, vertices, attempt);
        if (is_gain_sparse(g, spec, limits).sparse) chosen = std::move(attempt);
      } catch (const invalid_argument&) {
      }
    }
    if (static_cast<int>(chosen.size()) == target)
      return GainGraph(group, vertices, chosen);
  }
  return std::nullopt;
}

GainGraph perturb_non_tight(const GainGraph& g, const CountSpec& spec, Rng& rng,
                            const SparsityLimits& limits) {
  const SymmetryGroup& s = g.group();
  const int n = g.vertex_count();
  for (int attempt = 0; attempt < 200; ++attempt) {
    const int op = rng.below(3);
    std::vector<GainEdge> edges = g.edges();
    if (op == 1 && !edges.empty()) {
      edges.erase(edges.begin() + rng.below(static_cast<int>(edges.size())));
    } else {
      if (op == 2 && !edges.empty())
        edges.erase(edges.begin() + rng.below(static_cast<int>(edges.size())));
      GainEdge e;
      e.tail = rng.below(n);
      e.head = rng.below(n);
      if (e.tail == e.head) {
        if (s.order() < 2) continue;
        e.gain = 1 + rng.below(s.order() - 1);
      } else {
        e.gain = rng.below(s.order());
      }
      edges.push_back(e);
    }
    try {
      GainGraph candidate(g.group_ptr(), n, std::move(edges));
      if (candidate.edge_count() == 0) continue;
      if (!is_gain_tight(candidate, spec, limits)) return candidate;
    } catch (const invalid_argument&) {
    }
  }
  throw error("failed to perturb a graph into a non-tight state");
}

bool degree3_dichotomy_holds(const GainGraph& g, const CountSpec& spec, int v,
                             const SparsityLimits& limits) {
  std::vector<int> loops, nonloops;
  for (int ei : g.incident_edges(v))
    (g.edge(ei).is_loop() ? loops : nonloops).push_back(ei);
  if (!loops.empty() || nonloops.size() != 3) return true; // shape does not apply
  std::set<int> nbrs;
  for (int ei : nonloops) {
    const GainEdge& e = g.edge(ei);
    nbrs.insert(e.tail == v ? e.head : e.tail);
  }
  if (nbrs.size() != 3) return true;

  // Branch 1: v lies in a K4 whose labelling is switching-trivial.
  const int n = g.vertex_count();
  for (int w1 = 0; w1 < n; ++w1)
    for (int w2 = w1 + 1; w2 < n; ++w2)
      for (int w3 = w2 + 1; w3 < n; ++w3) {
        std::vector<int> quad = {v, w1, w2, w3};
        std::sort(quad.begin(), quad.end());
        if (std::unique(quad.begin(), quad.end()) != quad.end()) continue;
        // One edge per pair, any parallel representative; balance of some
        // choice is equivalent to balance of the first choice set when the
        // selection is consistent, so enumerate selections.
        std::vector<std::vector<int>> per_pair;
        bool complete = true;
        for (int i = 0; i < 4 && complete; ++i)
          for (int j = i + 1; j < 4; ++j) {
            std::vector<int> options;
            for (int ei = 0; ei < g.edge_count(); ++ei) {
              const GainEdge& e = g.edge(ei);
              if (std::minmax(e.tail, e.head) == std::minmax(quad[i], quad[j]))
                options.push_back(ei);
            }
            if (options.empty()) complete = false;
            per_pair.push_back(options);
          }
        if (!complete) continue;
        std::vector<size_t> pick(per_pair.size(), 0);
        while (true) {
          EdgeSet k4;
          for (size_t p = 0; p < per_pair.size(); ++p) k4.push_back(per_pair[p][pick[p]]);
          if (is_balanced(g, k4)) return true;
          size_t pos = 0;
          while (pos < pick.size()) {
            if (++pick[pos] < per_pair[pos].size()) break;
            pick[pos] = 0;
            ++pos;
          }
          if (pos >= pick.size()) break;
        }
      }

  // Branch 2: an admissible inverse H2a on v.
  if (auto step = find_admissible_reduction(g, spec, limits)) {
    if (auto* red = std::get_if<Reduction>(&*step)) {
      if (red->forward.kind == Move::Kind::H2a) return true;
    }
  }
  // The generic reducer may have found another reduction first; grant the
  // dichotomy only if a direct inverse H2a at v validates.
  const SymmetryGroup& s = g.group();
  int other[3], gain_in[3];
  for (int i = 0; i < 3; ++i) {
    const GainEdge& e = g.edge(nonloops[i]);
    other[i] = e.tail == v ? e.head : e.tail;
    gain_in[i] = g.gain_from(nonloops[i], other[i]);
  }
  const int pairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
  for (const auto& p : pairs) {
    const int i = p[0], j = p[1];
    if (other[i] == other[j]) continue;
    std::vector<GainEdge> edges;
    std::vector<char> drop(g.edge_count(), 0);
    for (int ei : nonloops) drop[ei] = 1;
    bool ok = true;
    for (int ei = 0; ei < g.edge_count() && ok; ++ei) {
      if (drop[ei]) continue;
      GainEdge e = g.edge(ei);
      if (e.tail == v || e.head == v) ok = false;
      if (e.tail > v) --e.tail;
      if (e.head > v) --e.head;
      edges.push_back(e);
    }
    if (!ok) continue;
    GainEdge repl{other[i], other[j], s.mul(gain_in[i], s.inv(gain_in[j]))};
    if (repl.tail > v) --repl.tail;
    if (repl.head > v) --repl.head;
    edges.push_back(repl);
    try {
      GainGraph reduced(g.group_ptr(), n - 1, std::move(edges));
      if (is_gain_tight(reduced, spec, limits)) return true;
    } catch (const invalid_argument&) {
    }
  }
  return false;
}

namespace {

json graph_summary(const GainGraph& g) {
  return json{{"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
}

struct CheckRecorder {
  Verdict& verdict;

  void add(bool agree, json record, const json* payload) {
    record["agree"] = agree;
    verdict.records.push_back(record);
    ++verdict.checks;
    if (agree) {
      ++verdict.agreements;
    } else if (payload) {
      json d = record;
      d["instance"] = *payload;
      verdict.disagreements.push_back(std::move(d));
    }
  }
};

} // namespace

Verdict cross_validate(const Experiment& exp) {
  Verdict verdict;
  verdict.gating = exp.gating;
  verdict.config = json{{"surface", to_string(exp.surface)},
                        {"group", io::to_json(exp.group)},
                        {"count", to_string(exp.count)},
                        {"policy", exp.policy == Experiment::Policy::ForwardMoves
                                       ? "forward_moves"
                                       : "random_edges"},
                        {"instances", exp.instances},
                        {"seed", exp.seed},
                        {"trials", exp.trials},
                        {"tol_rel", exp.tol_rel},
                        {"max_vertices", exp.max_vertices}};
  CheckRecorder rec{verdict};
  GroupPtr group = make_group(exp.group);
  const RankPolicy policy{exp.tol_rel, exp.trials};
  const SparsityLimits limits;
  const bool certifiable =
      !base_kinds_for(exp.count).empty() &&
      !(exp.count.kind == CountSpec::Kind::Uniform && exp.count.l == 2 && exp.count.m == 1 &&
        group->order() != 2);

  // Counts without a recursive construction have no base graphs to grow
  // from; fall back to greedy edge insertion for those.
  const bool forward = exp.policy == Experiment::Policy::ForwardMoves &&
                       !base_kinds_for(exp.count).empty();

  for (int i = 0; i < exp.instances; ++i) {
    const std::uint64_t seed_i = Rng::derive(exp.seed, i);
    Rng rng(seed_i);
    const int target = 2 + rng.below(std::max(1, exp.max_vertices - 1));
    std::optional<GainGraph> g;
    try {
      if (forward)
        g = random_tight_graph_by_moves(exp.count, group, target, rng, limits);
      else
        g = random_tight_graph_by_edges(exp.count, group, target, rng, true, limits);
    } catch (const error&) {
      g.reset();
    }
    if (!g) {
      ++verdict.skipped;
      continue;
    }

    // Tight instance: oracle re-validates, certifier reduces, numerics decide.
    bool tight = false, certified = true, cert_applicable = false;
    try {
      tight = is_gain_tight(*g, exp.count, limits);
      if (certifiable) {
        cert_applicable = true;
        CertifyResult cert = certify(*g, exp.count, limits);
        certified = cert.script.has_value();
        if (certified) replay(*cert.script, &exp.count, limits);
      }
    } catch (const scale_limit&) {
      ++verdict.skipped;
      continue;
    }
    IsostaticVerdict iso;
    for (int attempt = 0; attempt < 3; ++attempt) {
      iso = is_isostatic_numeric(*g, exp.surface, Rng::derive(seed_i, 1000 + attempt), policy);
      if (iso.isostatic) break;
    }
    const bool agree_pos = tight && iso.isostatic && (!cert_applicable || certified);
    const json payload = io::to_json(*g);
    rec.add(agree_pos,
            json{{"kind", "tight"},
                 {"index", i},
                 {"seed", seed_i},
                 {"graph", graph_summary(*g)},
                 {"tight", tight},
                 {"certified", cert_applicable ? json(certified) : json(nullptr)},
                 {"isostatic", iso.isostatic},
                 {"rank", iso.report.rank},
                 {"nullity", iso.report.nullity}},
            &payload);

    // Perturbed non-tight instance: both sides must reject.
    try {
      const GainGraph bad = perturb_non_tight(*g, exp.count, rng, limits);
      const bool bad_tight = is_gain_tight(bad, exp.count, limits);
      const IsostaticVerdict bad_iso =
          is_isostatic_numeric(bad, exp.surface, Rng::derive(seed_i, 2000), policy);
      const bool agree_neg = !bad_tight && !bad_iso.isostatic;
      const json bad_payload = io::to_json(bad);
      rec.add(agree_neg,
              json{{"kind", "perturbed"},
                   {"index", i},
                   {"seed", seed_i},
                   {"graph", graph_summary(bad)},
                   {"tight", bad_tight},
                   {"certified", nullptr},
                   {"isostatic", bad_iso.isostatic},
                   {"rank", bad_iso.report.rank},
                   {"nullity", bad_iso.report.nullity}},
              &bad_payload);
    } catch (const error&) {
      ++verdict.skipped;
    }
  }
  return verdict;
}

Verdict cover_equivalence_test(int instances, std::uint64_t seed) {
  Verdict verdict;
  verdict.config = json{{"suite", "cover_equivalence"}, {"instances", instances}, {"seed", seed}};
  CheckRecorder rec{verdict};
  GroupPtr group = make_group(GroupSpec::Ci());
  const CountSpec spec = CountSpec::uniform(2, 2, 1);
  for (int i = 0; i < instances; ++i) {
    Rng rng(Rng::derive(seed, i));
    const int n = 1 + rng.below(6);
    std::optional<GainGraph> g;
    if (rng.coin()) {
      g = random_tight_graph_by_edges(spec, group, n, rng, /*allow_loops=*/false);
    }
    if (!g) {
      // Loop-free random graph (the equivalence needs the action free on
      // edges, which excludes loops in the quotient).
      std::vector<GainEdge> pool;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int gain = 0; gain < 2; ++gain) pool.push_back({a, b, gain});
      for (int k = static_cast<int>(pool.size()) - 1; k > 0; --k)
        std::swap(pool[k], pool[rng.below(k + 1)]);
      const int want = std::min<int>(static_cast<int>(pool.size()), rng.below(2 * n + 1));
      std::vector<GainEdge> edges(pool.begin(), pool.begin() + want);
      g = GainGraph(group, n, std::move(edges));
    }
    const bool quotient_tight = g->edge_count() > 0 && is_gain_tight(*g, spec);
    const CoverGraph cv = cover(*g);
    const bool cover_tight =
        static_cast<int>(cv.edges().size()) == 2 * cv.vertex_count() - 2 &&
        is_cover_sparse(cv.vertex_count(), cv.edges(), 2, 2).sparse;
    const json payload = io::to_json(*g);
    rec.add(quotient_tight == cover_tight,
            json{{"kind", "cover_equivalence"},
                 {"graph", graph_summary(*g)},
                 {"quotient_tight", quotient_tight},
                 {"cover_tight", cover_tight}},
            &payload);
  }
  return verdict;
}

namespace {

GainGraph k4_plus_edge(GroupPtr group, int tail, int head, int gain) {
  std::vector<GainEdge> edges;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) edges.push_back({i, j, 0});
  edges.push_back({tail, head, gain});
  return GainGraph(std::move(group), 4, std::move(edges));
}

std::vector<Eigen::Vector3d> cylinder_reference_points() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{r, r, 4.0}, {1.0, 0.0, 2.0}, {-1.0, 0.0, -1.0}, {r, r, -1.0}};
}

std::vector<Eigen::Vector3d> cone_reference_points() {
  const double r2 = std::sqrt(2.0);
  return {{1, 0, 1}, {3, 0, -3}, {1, 1, r2}, {-2, 2, 2 * r2}, {r2, -r2, -2}};
}

} // namespace

Verdict paper_example_suite() {
  Verdict verdict;
  verdict.config = json{{"suite", "paper_examples"}};
  CheckRecorder rec{verdict};
  const RankPolicy policy;

  auto pinned_rank = [&](const std::string& name, const GainGraph& g, SurfaceKind surface,
                         std::vector<Eigen::Vector3d> pts, int expect_rank,
                         double min_gap = 1e6) {
    SymmetricFramework fw{g, surface, std::move(pts)};
    validate_framework(fw);
    const RankReport r = numeric_rank(orbit_surface_matrix(fw));
    const bool pass = r.rank == expect_rank && r.gap_ratio > min_gap;
    rec.add(pass,
            json{{"kind", "pinned_rank"},
                 {"name", name},
                 {"expected_rank", expect_rank},
                 {"report", io::to_json(r)}},
            nullptr);
  };
  auto generic_rank_check = [&](const std::string& name, const GainGraph& g, SurfaceKind surface,
                                int expect_rank, std::uint64_t seed) {
    const RankReport r = generic_orbit_surface_rank(g, surface, seed, policy);
    rec.add(r.rank == expect_rank,
            json{{"kind", "generic_rank"},
                 {"name", name},
                 {"expected_rank", expect_rank},
                 {"report", io::to_json(r)}},
            nullptr);
  };

  // Cylinder: K4 plus an extra edge or loop, rank 11 for the vertical
  // mirror through (0,1,0) and for inversion, at the pinned coordinates.
  {
    const auto pts = cylinder_reference_points();
    const std::vector<std::pair<std::string, GroupSpec>> groups = {
        {"Cs_x0", GroupSpec::Cs_containing(M_PI / 2.0)}, {"Ci", GroupSpec::Ci()}};
    for (const auto& [gname, gspec] : groups) {
      GroupPtr group = make_group(gspec);
      pinned_rank("cylinder_reference/" + gname + "/parallel", k4_plus_edge(group, 0, 1, 1),
                  SurfaceKind::Cylinder, pts, 11);
      GainGraph with_loop = [&] {
        std::vector<GainEdge> edges;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) edges.push_back({i, j, 0});
        edges.push_back({0, 0, 1});
        return GainGraph(group, 4, std::move(edges));
      }();
      pinned_rank("cylinder_reference/" + gname + "/loop", with_loop, SurfaceKind::Cylinder, pts,
                  11);
    }
  }

  // Cone: K4+f (rank 11) and K5-e (rank 14) at the pinned five points, for
  // every in-scope group with m = 2 and m = 3 where parametric.
  {
    const auto pts5 = cone_reference_points();
    const std::vector<Eigen::Vector3d> pts4(pts5.begin(), pts5.begin() + 4);
    const std::vector<std::pair<std::string, GroupSpec>> groups = {
        {"Cm2", GroupSpec::Cm(2)},   {"Cm3", GroupSpec::Cm(3)},
        {"Cs_h", GroupSpec::Cs_horizontal()}, {"Ci", GroupSpec::Ci()},
        {"Cmh2", GroupSpec::Cmh(2)}, {"Cmh3", GroupSpec::Cmh(3)},
        {"S2m2", GroupSpec::S2m(2)}, {"S2m3", GroupSpec::S2m(3)}};
    for (const auto& [gname, gspec] : groups) {
      GroupPtr group = make_group(gspec);
      pinned_rank("cone_reference/" + gname + "/K4+f", k4_plus_edge(group, 0, 2, 1),
                  SurfaceKind::Cone, pts4, 11);
      GainGraph k4_loop = [&] {
        std::vector<GainEdge> edges;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) edges.push_back({i, j, 0});
        edges.push_back({0, 0, 1});
        return GainGraph(group, 4, std::move(edges));
      }();
      pinned_rank("cone_reference/" + gname + "/K4+loop", k4_loop, SurfaceKind::Cone, pts4, 11);
      pinned_rank("cone_reference/" + gname + "/K5-e", base_K5_minus_e(group), SurfaceKind::Cone,
                  pts5, 14);
    }
  }

  // Base-case matrices at generic samples.
  {
    generic_rank_check("base/sphere/K2_Ci_gain0", base_K2(make_group(GroupSpec::Ci()), 0),
                       SurfaceKind::Sphere, 3, 11);
    generic_rank_check("base/sphere/K2_Ci_gain1", base_K2(make_group(GroupSpec::Ci()), 1),
                       SurfaceKind::Sphere, 3, 12);
    generic_rank_check("base/sphere/loop_Cmh3",
                       base_K1_loop(make_group(GroupSpec::Cmh(3)), 1), SurfaceKind::Sphere, 2,
                       13);
    generic_rank_check("base/sphere/loop_Cmh3_mirror",
                       base_K1_loop(make_group(GroupSpec::Cmh(3)), 3), SurfaceKind::Sphere, 2,
                       14);
    generic_rank_check("base/sphere/loop_S2m2",
                       base_K1_loop(make_group(GroupSpec::S2m(2)), 1), SurfaceKind::Sphere, 2,
                       15);
    generic_rank_check("base/cylinder/loop_Cs_containing",
                       base_K1_loop(make_group(GroupSpec::Cs_containing()), 1),
                       SurfaceKind::Cylinder, 2, 16);
    generic_rank_check("base/cylinder/loop_Cs_horizontal",
                       base_K1_loop(make_group(GroupSpec::Cs_horizontal()), 1),
                       SurfaceKind::Cylinder, 2, 17);
    generic_rank_check("base/cylinder/loop_Ci", base_K1_loop(make_group(GroupSpec::Ci()), 1),
                       SurfaceKind::Cylinder, 2, 18);
    generic_rank_check("base/cylinder/K1_Cm3", base_K1(make_group(GroupSpec::Cm(3))),
                       SurfaceKind::Cylinder, 1, 19);
    const std::vector<std::pair<std::string, GroupSpec>> cone_groups = {
        {"Cm2", GroupSpec::Cm(2)},   {"Cs_h", GroupSpec::Cs_horizontal()},
        {"Ci", GroupSpec::Ci()},     {"Cmh2", GroupSpec::Cmh(2)},
        {"S2m2", GroupSpec::S2m(2)}};
    std::uint64_t seed = 20;
    for (const auto& [gname, gspec] : cone_groups)
      generic_rank_check("base/cone/loop_" + gname, base_K1_loop(make_group(gspec), 1),
                         SurfaceKind::Cone, 2, seed++);
  }

  // Inversion-symmetric triangle on the sphere is isostatic.
  {
    GroupPtr ci = make_group(GroupSpec::Ci());
    GainGraph triangle(ci, 3, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}});
    const IsostaticVerdict iso = is_isostatic_numeric(triangle, SurfaceKind::Sphere, 33);
    rec.add(iso.isostatic,
            json{{"kind", "isostatic"},
                 {"name", "sphere/Ci/trivial_triangle"},
                 {"report", io::to_json(iso.report)}},
            nullptr);
  }

  // Half-turn axis perpendicular to the cylinder: the rigid-without-symmetry
  // graph with a symmetry-preserving motion.
  {
    GroupPtr c2 = make_group(GroupSpec::C2_perp());
    std::vector<GainEdge> edges;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) edges.push_back({i, j, 0});
    edges.push_back({2, 3, 1});
    GainGraph g(c2, 4, std::move(edges));

    const int k_s = symmetric_type(SurfaceKind::Cylinder, GroupSpec::C2_perp());
    const RankReport quotient = generic_orbit_surface_rank(g, SurfaceKind::Cylinder, 77);
    const CoverGraph cv = cover(g);
    const bool cover_tight =
        static_cast<int>(cv.edges().size()) == 2 * cv.vertex_count() - 2 &&
        is_cover_sparse(cv.vertex_count(), cv.edges(), 2, 2).sparse;
    // Without symmetry the cover is rigid (full generic rank); at symmetric
    // configurations one motion survives.
    const RankReport cover_rank =
        generic_surface_rank(cv.vertex_count(), cv.edges(), SurfaceKind::Cylinder, 78);
    const RankReport symmetric_rank = generic_cover_rank(g, SurfaceKind::Cylinder, 79);
    const bool pass = k_s == 0 && quotient.nullity == 1 && cover_tight &&
                      cover_rank.rank == 22 && symmetric_rank.rank == 21;
    rec.add(pass,
            json{{"kind", "mechanism"},
                 {"name", "cylinder/C2_perp/K4_plus_edge"},
                 {"k_s", k_s},
                 {"quotient", io::to_json(quotient)},
                 {"cover_tight", cover_tight},
                 {"cover_rank", io::to_json(cover_rank)},
                 {"symmetric_cover_rank", io::to_json(symmetric_rank)}},
            nullptr);
  }

  return verdict;
}

Verdict conjecture_experiment(SurfaceKind surface, const GroupSpec& group, int instances,
                              std::uint64_t seed) {
  Experiment exp;
  exp.surface = surface;
  exp.group = group;
  exp.count = maxwell_count(surface, group);
  exp.policy = Experiment::Policy::RandomEdges;
  exp.instances = instances;
  exp.seed = seed;
  exp.max_vertices = 5;
  exp.gating = false;
  Verdict verdict = cross_validate(exp);
  verdict.config["suite"] = "conjecture";
  return verdict;
}

} // namespace symrig
