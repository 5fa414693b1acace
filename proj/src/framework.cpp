#include "symrig/framework.hpp"

namespace symrig {

void validate_framework(const SymmetricFramework& fw, const FrameworkTolerances& tol) {
  const Surface surface(fw.surface);
  const SymmetryGroup& s = fw.group();
  if (static_cast<int>(fw.points.size()) != fw.graph.vertex_count())
    throw invalid_argument("framework needs one point per quotient vertex");
  for (const auto& p : fw.points) {
    if (!surface.contains(p, tol.on_surface))
      throw invalid_argument("framework point off the surface");
    if (fw.surface == SurfaceKind::Cone && p.norm() <= tol.free_action)
      throw invalid_argument("framework point at the cone apex");
  }
  for (int g = 1; g < s.order(); ++g)
    for (const auto& p : fw.points)
      if ((s.rep(g) * p - p).norm() <= tol.free_action)
        throw invalid_argument("nontrivial element fixes a joint (action not free)");
  for (const auto& e : fw.graph.edges()) {
    const Eigen::Vector3d q = s.rep(e.gain) * fw.points[e.head];
    if ((fw.points[e.tail] - q).norm() <= tol.free_action)
      throw invalid_argument("degenerate bar (coincident endpoints)");
  }
}

Eigen::Vector3d sample_point(SurfaceKind surface, Rng& rng) {
  switch (surface) {
    case SurfaceKind::Sphere: {
      Eigen::Vector3d p(rng.gaussian(), rng.gaussian(), rng.gaussian());
      while (p.norm() < 1e-6) p = {rng.gaussian(), rng.gaussian(), rng.gaussian()};
      return p.normalized();
    }
    case SurfaceKind::Cylinder: {
      const double a = rng.uniform(0.0, 6.283185307179586477);
      return {std::cos(a), std::sin(a), rng.uniform(-2.0, 2.0)};
    }
    case SurfaceKind::Cone: {
      const double a = rng.uniform(0.0, 6.283185307179586477);
      const double r = rng.uniform(0.5, 2.0);
      const double z = rng.coin() ? r : -r;
      return {r * std::cos(a), r * std::sin(a), z};
    }
  }
  throw invalid_argument("unknown surface");
}

SymmetricFramework sample_config(SurfaceKind surface, const GainGraph& graph,
                                 std::uint64_t seed) {
  if (!compatible(surface, graph.group()))
    throw unsupported("group incompatible with surface");
  Rng rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    SymmetricFramework fw{graph, surface, {}};
    fw.points.reserve(graph.vertex_count());
    for (int v = 0; v < graph.vertex_count(); ++v) fw.points.push_back(sample_point(surface, rng));
    try {
      validate_framework(fw);
      return fw;
    } catch (const invalid_argument&) {
      continue;
    }
  }
  throw invalid_argument("could not sample a non-degenerate symmetric configuration");
}

CoverFramework build_cover_framework(const SymmetricFramework& fw) {
  const SymmetryGroup& s = fw.group();
  CoverGraph cg = cover(fw.graph);
  std::vector<Eigen::Vector3d> points(cg.vertex_count());
  for (int g = 0; g < s.order(); ++g)
    for (int v = 0; v < fw.graph.vertex_count(); ++v)
      points[cg.vertex_id(g, v)] = s.rep(g) * fw.points[v];
  return {std::move(cg), std::move(points), fw.surface};
}

} // namespace symrig
