#pragma once

#include <Eigen/Dense>
#include <optional>

#include "symrig/framework.hpp"

namespace symrig {

/// Rank / nullspace evidence for one matrix (or the best of several trials).
struct RankReport {
  int rows = 0, cols = 0;
  int rank = 0, nullity = 0;
  double sigma_min_kept = 0.0;   // smallest singular value counted in the rank
  double sigma_max_dropped = 0.0; // largest singular value below the threshold
  double tolerance = 0.0;
  double gap_ratio = 0.0; // sigma_min_kept / sigma_max_dropped (inf when nothing dropped)
  int trials = 1;
  bool ill_conditioned = false; // gap_ratio below 1e3
};

struct RankPolicy {
  double tol_rel = 1e-10;
  int trials = 5;
};

/// Singular-value rank at threshold tol_rel * sigma_max * max(rows, cols).
RankReport numeric_rank(const Eigen::MatrixXd& m, const RankPolicy& policy = {});

/// Rigidity matrix of a simple framework on a surface: one row per bar
/// (p_i - p_j blocks) followed by one normal row per joint.
Eigen::MatrixXd surface_rigidity_matrix(const CoverFramework& fw);

/// Orbit rigidity matrix of the quotient: row p_i - tau(psi) p_j /
/// p_j - tau(psi)^-1 p_i per non-loop edge, 2p_i - tau(psi) p_i -
/// tau(psi)^-1 p_i per loop.
Eigen::MatrixXd orbit_matrix(const SymmetricFramework& fw);

/// Orbit matrix stacked over the diagonal block of quotient surface normals.
Eigen::MatrixXd orbit_surface_matrix(const SymmetricFramework& fw);

/// Best-of-T rank of the orbit-surface matrix over random configurations.
RankReport generic_orbit_surface_rank(const GainGraph& g, SurfaceKind surface,
                                      std::uint64_t seed, const RankPolicy& policy = {});

/// Best-of-T rank of the lifted surface rigidity matrix at symmetric
/// configurations (the lift of a random quotient configuration).
RankReport generic_cover_rank(const GainGraph& g, SurfaceKind surface, std::uint64_t seed,
                              const RankPolicy& policy = {});

/// Best-of-T rank of the surface rigidity matrix of a plain simple graph,
/// all joints sampled independently (no symmetry).
RankReport generic_surface_rank(int vertices, const std::vector<std::pair<int, int>>& edges,
                                SurfaceKind surface, std::uint64_t seed,
                                const RankPolicy& policy = {});

struct IsostaticVerdict {
  bool isostatic = false;
  bool count_ok = false;
  int k_s = 0;
  RankReport report;
};

/// Symmetry-forced isostatic test: edge count 2|V0| - k_S, independent rows,
/// nullity exactly k_S at a generic sample.
IsostaticVerdict is_isostatic_numeric(const GainGraph& g, SurfaceKind surface,
                                      std::uint64_t seed, const RankPolicy& policy = {});

/// Orthonormal nullspace basis of the orbit-surface matrix (symmetric
/// infinitesimal motions of the quotient).
std::vector<Eigen::VectorXd> motion_basis(const SymmetricFramework& fw,
                                          const RankPolicy& policy = {});

/// Orthonormal left-nullspace basis (symmetric self-stresses).
std::vector<Eigen::VectorXd> stress_basis(const SymmetricFramework& fw,
                                          const RankPolicy& policy = {});

struct LiftResult {
  Eigen::VectorXd lifted;
  double residual = 0.0; // relative to the lifted vector's norm
};

/// Lifts a quotient motion to the cover (velocity rep(g) u_i at (g, i)) and
/// evaluates the cover rigidity-matrix residual.
LiftResult lift_motion(const SymmetricFramework& fw, const Eigen::VectorXd& u);

/// Lifts a quotient stress (omega, lambda) to the cover, scaling loop
/// coefficients by |S| / fiber size, and evaluates the cover cokernel
/// residual.
LiftResult lift_stress(const SymmetricFramework& fw, const Eigen::VectorXd& omega_lambda);

} // namespace symrig
