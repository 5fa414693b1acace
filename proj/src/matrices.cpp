#include "symrig/matrices.hpp"

#include <limits>

#include "symrig/group.hpp"

namespace symrig {

RankReport numeric_rank(const Eigen::MatrixXd& m, const RankPolicy& policy) {
  RankReport report;
  report.rows = static_cast<int>(m.rows());
  report.cols = static_cast<int>(m.cols());
  if (m.size() == 0) return report;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  report.tolerance = policy.tol_rel * sigma_max * std::max(report.rows, report.cols);
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma(i) > report.tolerance) ++rank;
  report.rank = rank;
  report.nullity = report.cols - rank;
  report.sigma_min_kept = rank > 0 ? sigma(rank - 1) : 0.0;
  report.sigma_max_dropped = rank < sigma.size() ? sigma(rank) : 0.0;
  report.gap_ratio = report.sigma_max_dropped > 0.0
                         ? report.sigma_min_kept / report.sigma_max_dropped
                         : std::numeric_limits<double>::infinity();
  report.ill_conditioned = report.gap_ratio < 1e3;
  return report;
}

Eigen::MatrixXd surface_rigidity_matrix(const CoverFramework& fw) {
  const Surface surface(fw.surface);
  const int nv = fw.graph.vertex_count();
  const int ne = static_cast<int>(fw.graph.edges().size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ne + nv, 3 * nv);
  for (int ei = 0; ei < ne; ++ei) {
    const auto [i, j] = fw.graph.edges()[ei];
    const Eigen::Vector3d d = fw.points[i] - fw.points[j];
    m.block<1, 3>(ei, 3 * i) += d.transpose();
    m.block<1, 3>(ei, 3 * j) -= d.transpose();
  }
  for (int v = 0; v < nv; ++v)
    m.block<1, 3>(ne + v, 3 * v) = surface.normal(fw.points[v]).transpose();
  return m;
}

Eigen::MatrixXd orbit_matrix(const SymmetricFramework& fw) {
  const SymmetryGroup& s = fw.group();
  const int nv = fw.graph.vertex_count();
  const int ne = fw.graph.edge_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ne, 3 * nv);
  for (int ei = 0; ei < ne; ++ei) {
    const GainEdge& e = fw.graph.edge(ei);
    const Eigen::Matrix3d& tau = s.rep(e.gain);
    const Eigen::Matrix3d& tau_inv = s.rep(s.inv(e.gain));
    if (e.is_loop()) {
      const Eigen::Vector3d row =
          2.0 * fw.points[e.tail] - tau * fw.points[e.tail] - tau_inv * fw.points[e.tail];
      m.block<1, 3>(ei, 3 * e.tail) = row.transpose();
    } else {
      m.block<1, 3>(ei, 3 * e.tail) =
          (fw.points[e.tail] - tau * fw.points[e.head]).transpose();
      m.block<1, 3>(ei, 3 * e.head) =
          (fw.points[e.head] - tau_inv * fw.points[e.tail]).transpose();
    }
  }
  return m;
}

Eigen::MatrixXd orbit_surface_matrix(const SymmetricFramework& fw) {
  const Surface surface(fw.surface);
  const int nv = fw.graph.vertex_count();
  const int ne = fw.graph.edge_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ne + nv, 3 * nv);
  m.topRows(ne) = orbit_matrix(fw);
  for (int v = 0; v < nv; ++v)
    m.block<1, 3>(ne + v, 3 * v) = surface.normal(fw.points[v]).transpose();
  return m;
}

namespace {

template <typename Builder>
RankReport best_of_trials(const GainGraph& g, SurfaceKind surface, std::uint64_t seed,
                          const RankPolicy& policy, Builder&& build) {
  RankReport best;
  for (int t = 0; t < policy.trials; ++t) {
    const SymmetricFramework fw = sample_config(surface, g, Rng::derive(seed, t));
    RankReport r = numeric_rank(build(fw), policy);
    if (t == 0 || r.rank > best.rank ||
        (r.rank == best.rank && r.gap_ratio > best.gap_ratio))
      best = r;
  }
  best.trials = policy.trials;
  return best;
}

} // namespace

RankReport generic_orbit_surface_rank(const GainGraph& g, SurfaceKind surface,
                                      std::uint64_t seed, const RankPolicy& policy) {
  return best_of_trials(g, surface, seed, policy,
                        [](const SymmetricFramework& fw) { return orbit_surface_matrix(fw); });
}

RankReport generic_cover_rank(const GainGraph& g, SurfaceKind surface, std::uint64_t seed,
                              const RankPolicy& policy) {
  return best_of_trials(g, surface, seed, policy, [](const SymmetricFramework& fw) {
    return surface_rigidity_matrix(build_cover_framework(fw));
  });
}

RankReport generic_surface_rank(int vertices, const std::vector<std::pair<int, int>>& edges,
                                SurfaceKind surface, std::uint64_t seed,
                                const RankPolicy& policy) {
  RankReport best;
  for (int t = 0; t < policy.trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    std::vector<Eigen::Vector3d> pts;
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      pts.clear();
      for (int v = 0; v < vertices; ++v) pts.push_back(sample_point(surface, rng));
      ok = true;
      for (auto [i, j] : edges)
        if ((pts[i] - pts[j]).norm() <= 1e-6) ok = false;
    }
    if (!ok) throw invalid_argument("could not sample a non-degenerate configuration");
    // Reuse the cover-framework assembly with a trivial group.
    CoverFramework plain{CoverGraph(make_group(GroupSpec::Cm(1)), vertices, edges,
                                    std::vector<std::vector<int>>(edges.size())),
                         pts, surface};
    RankReport r = numeric_rank(surface_rigidity_matrix(plain), policy);
    if (t == 0 || r.rank > best.rank ||
        (r.rank == best.rank && r.gap_ratio > best.gap_ratio))
      best = r;
  }
  best.trials = policy.trials;
  return best;
}

IsostaticVerdict is_isostatic_numeric(const GainGraph& g, SurfaceKind surface,
                                      std::uint64_t seed, const RankPolicy& policy) {
  IsostaticVerdict verdict;
  verdict.k_s = symmetric_type(surface, g.group().spec());
  verdict.count_ok = g.edge_count() == 2 * g.vertex_count() - verdict.k_s;
  verdict.report = generic_orbit_surface_rank(g, surface, seed, policy);
  const int rows = g.edge_count() + g.vertex_count();
  verdict.isostatic = verdict.count_ok && verdict.report.rank == rows &&
                      verdict.report.nullity == verdict.k_s;
  return verdict;
}

std::vector<Eigen::VectorXd> motion_basis(const SymmetricFramework& fw,
                                          const RankPolicy& policy) {
  const Eigen::MatrixXd m = orbit_surface_matrix(fw);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double tol = policy.tol_rel * sigma_max * std::max(m.rows(), m.cols());
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma(i) > tol) ++rank;
  std::vector<Eigen::VectorXd> basis;
  for (int i = rank; i < m.cols(); ++i) basis.push_back(svd.matrixV().col(i));
  return basis;
}

std::vector<Eigen::VectorXd> stress_basis(const SymmetricFramework& fw,
                                          const RankPolicy& policy) {
  const Eigen::MatrixXd m = orbit_surface_matrix(fw);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double tol = policy.tol_rel * sigma_max * std::max(m.rows(), m.cols());
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma(i) > tol) ++rank;
  std::vector<Eigen::VectorXd> basis;
  for (int i = rank; i < m.rows(); ++i) basis.push_back(svd.matrixU().col(i));
  return basis;
}

LiftResult lift_motion(const SymmetricFramework& fw, const Eigen::VectorXd& u) {
  const SymmetryGroup& s = fw.group();
  const int nv = fw.graph.vertex_count();
  if (u.size() != 3 * nv) throw invalid_argument("motion vector has wrong dimension");
  const CoverFramework cfw = build_cover_framework(fw);
  Eigen::VectorXd lifted(3 * cfw.graph.vertex_count());
  for (int g = 0; g < s.order(); ++g)
    for (int v = 0; v < nv; ++v)
      lifted.segment<3>(3 * cfw.graph.vertex_id(g, v)) = s.rep(g) * u.segment<3>(3 * v);
  const Eigen::MatrixXd r = surface_rigidity_matrix(cfw);
  const double norm = lifted.norm();
  LiftResult out{std::move(lifted), 0.0};
  out.residual = norm > 0 ? (r * out.lifted).norm() / norm : 0.0;
  return out;
}

LiftResult lift_stress(const SymmetricFramework& fw, const Eigen::VectorXd& omega_lambda) {
  const SymmetryGroup& s = fw.group();
  const int nv = fw.graph.vertex_count();
  const int ne = fw.graph.edge_count();
  if (omega_lambda.size() != ne + nv) throw invalid_argument("stress vector has wrong dimension");
  const CoverFramework cfw = build_cover_framework(fw);
  const int cover_ne = static_cast<int>(cfw.graph.edges().size());
  const int cover_nv = cfw.graph.vertex_count();
  Eigen::VectorXd lifted = Eigen::VectorXd::Zero(cover_ne + cover_nv);
  for (int ei = 0; ei < ne; ++ei) {
    const auto& fiber = cfw.graph.fibers()[ei];
    // An involutory loop gain lifts |S| walks onto |S|/2 bars; the cover
    // coefficient doubles so the vertex equilibrium matches.
    const double scale = static_cast<double>(s.order()) / static_cast<double>(fiber.size());
    for (int cover_edge : fiber) lifted(cover_edge) += scale * omega_lambda(ei);
  }
  for (int g = 0; g < s.order(); ++g)
    for (int v = 0; v < nv; ++v)
      lifted(cover_ne + cfw.graph.vertex_id(g, v)) = omega_lambda(ne + v);
  const Eigen::MatrixXd r = surface_rigidity_matrix(cfw);
  const double norm = lifted.norm();
  LiftResult out{std::move(lifted), 0.0};
  out.residual = norm > 0 ? (r.transpose() * out.lifted).norm() / norm : 0.0;
  return out;
}

} // namespace symrig
