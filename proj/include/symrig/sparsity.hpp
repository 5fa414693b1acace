#pragma once

#include <optional>
#include <string>

#include "symrig/gain_graph.hpp"
#include "symrig/surface.hpp"

namespace symrig {

/// Count specification for the gain-sparsity oracles.
///
/// uniform: |F| <= k|V(F)| - l for balanced F, <= k|V(F)| - m for all F.
/// sphere_i / cylinder_r: the subgroup-dependent variants (the bound for a
/// set depends on the subgroup its closed walks induce).
/// subgroup_general: |F| <= 2|V(F)| - k_<F>_v for every subgroup, with the
/// values taken from the subgroup's symmetric type on the surface.
struct CountSpec {
  enum class Kind { Uniform, SphereI, CylinderR, SubgroupGeneral } kind = Kind::Uniform;
  int k = 2, l = 3, m = 3;
  SurfaceKind surface = SurfaceKind::Sphere; // variants only

  static CountSpec uniform(int k, int l, int m);
  static CountSpec sphere_i();
  static CountSpec cylinder_r();
  static CountSpec subgroup_general(SurfaceKind surface);

  bool operator==(const CountSpec& o) const {
    return kind == o.kind && k == o.k && l == o.l && m == o.m &&
           (kind == Kind::Uniform || surface == o.surface);
  }
};

std::string to_string(const CountSpec& spec);

struct SparsityLimits {
  int max_vertices = 12;
  long long max_evaluations = 100000000; // potential evaluations across all subsets
};

struct Violation {
  EdgeSet edges;
  int vertex_support_size = 0;
  int bound_used = 0;
  enum class Clause { General, Balanced, Subgroup } clause = Clause::General;
  std::vector<int> subgroup; // Subgroup clause only
};

struct SparsityResult {
  bool sparse = false;
  std::optional<Violation> violation;
};

/// Exact gain-sparsity decision by enumeration of connected vertex subsets
/// and of the consistent edge sets of their vertex potentials. Never wrong;
/// throws scale_limit when the enumeration budget would be exceeded.
SparsityResult is_gain_sparse(const GainGraph& g, const CountSpec& spec,
                              const SparsityLimits& limits = {});

/// Sparse with the exact edge count (k|V|-m, or 2|V|-k_S for variants).
bool is_gain_tight(const GainGraph& g, const CountSpec& spec,
                   const SparsityLimits& limits = {});

/// Target edge count of a tight graph under this spec.
int tight_edge_target(const GainGraph& g, const CountSpec& spec);

/// Plain (k,l)-sparsity of a simple graph by vertex-subset enumeration.
struct CoverSparsityResult {
  bool sparse = false;
  std::vector<int> violating_vertices;
};

CoverSparsityResult is_cover_sparse(int n, const std::vector<std::pair<int, int>>& edges,
                                    int k, int l, const SparsityLimits& limits = {});

/// Count spec mandated by the necessity theorems for the pair (tables by
/// surface and group family; conjectural rows dispatch to their counts).
CountSpec maxwell_count(SurfaceKind surface, const GroupSpec& group);

/// True iff the quotient is gain-tight for the dispatched count.
bool maxwell_necessary(const GainGraph& g, SurfaceKind surface,
                       const SparsityLimits& limits = {});

} // namespace symrig
