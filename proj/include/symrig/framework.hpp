#pragma once

#include <Eigen/Dense>
#include <vector>

#include "symrig/gain_graph.hpp"
#include "symrig/rng.hpp"
#include "symrig/surface.hpp"

namespace symrig {

/// A symmetric framework given by its quotient data: gain graph, surface,
/// and one point per quotient vertex. The full (covering) framework places
/// rep(g) * p0[v] at cover vertex (g, v).
struct SymmetricFramework {
  GainGraph graph;
  SurfaceKind surface;
  std::vector<Eigen::Vector3d> points;

  const SymmetryGroup& group() const { return graph.group(); }
};

struct FrameworkTolerances {
  double on_surface = 1e-10;
  double free_action = 1e-6; // minimum distance moved by nontrivial elements
};

/// Throws invalid_argument when a point is off the surface, a nontrivial
/// element nearly fixes a joint, or a bar degenerates (p_i == tau(psi) p_j).
void validate_framework(const SymmetricFramework& fw, const FrameworkTolerances& tol = {});

/// Random symmetry-generic quotient configuration; resamples until the
/// framework invariants hold (at most 100 attempts). Deterministic in seed.
SymmetricFramework sample_config(SurfaceKind surface, const GainGraph& graph,
                                 std::uint64_t seed);

/// One random point on the surface (sphere: normalized Gaussian; cylinder:
/// random angle, z in [-2,2]; cone: random angle, |z| in [0.5,2]).
Eigen::Vector3d sample_point(SurfaceKind surface, Rng& rng);

/// The lifted simple framework: cover graph plus one point per cover vertex.
struct CoverFramework {
  CoverGraph graph;
  std::vector<Eigen::Vector3d> points;
  SurfaceKind surface;
};

CoverFramework build_cover_framework(const SymmetricFramework& fw);

} // namespace symrig
