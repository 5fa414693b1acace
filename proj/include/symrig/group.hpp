#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "symrig/errors.hpp"
#include "symrig/surface.hpp"

namespace symrig {

/// Schoenflies point-group families compatible with the sphere, cylinder
/// and cone. Rotation axes are the z-axis; Cs_containing / C2_perp take an
/// azimuth parameter fixing the vertical mirror plane / horizontal axis.
enum class GroupKind {
  Cs_containing,
  Cs_horizontal,
  Cm,
  C2_perp,
  Ci,
  Cmh,
  S2m,
  Cmv,
  Dm,
};

struct GroupSpec {
  GroupKind kind = GroupKind::Ci;
  int m = 1;          // Cm, Cmh, S2m, Cmv, Dm
  double angle = 0.0; // azimuth for Cs_containing, C2_perp

  static GroupSpec Ci() { return {GroupKind::Ci, 1, 0.0}; }
  static GroupSpec Cs_containing(double angle = 0.0) { return {GroupKind::Cs_containing, 1, angle}; }
  static GroupSpec Cs_horizontal() { return {GroupKind::Cs_horizontal, 1, 0.0}; }
  static GroupSpec Cm(int m) { return {GroupKind::Cm, m, 0.0}; }
  static GroupSpec C2_perp(double angle = 0.0) { return {GroupKind::C2_perp, 1, angle}; }
  static GroupSpec Cmh(int m) { return {GroupKind::Cmh, m, 0.0}; }
  static GroupSpec S2m(int m) { return {GroupKind::S2m, m, 0.0}; }
  static GroupSpec Cmv(int m) { return {GroupKind::Cmv, m, 0.0}; }
  static GroupSpec Dm(int m) { return {GroupKind::Dm, m, 0.0}; }
};

std::string to_string(GroupKind kind);
std::string to_string(const GroupSpec& spec);

/// A finite point group: canonical element enumeration, multiplication
/// table, and orthogonal 3x3 representation per element. Index 0 is the
/// identity. Immutable after construction.
class SymmetryGroup {
public:
  explicit SymmetryGroup(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  const Eigen::Matrix3d& rep(int g) const { return reps_[g]; }
  bool abelian() const { return abelian_; }

  /// All subgroups, each as a sorted list of element indices.
  const std::vector<std::vector<int>>& subgroups() const;

  /// Subgroup generated by the given elements (sorted element indices).
  std::vector<int> closure(const std::vector<int>& generators) const;

  /// True when every element of the set is a rotation about the z-axis.
  bool all_z_rotations(const std::vector<int>& elements) const;

  /// True when the set is {id} or {id, -I}.
  bool trivial_or_inversion(const std::vector<int>& elements) const;

  bool same_group(const SymmetryGroup& other) const { return this == &other; }

private:
  GroupSpec spec_;
  int order_ = 0;
  std::vector<Eigen::Matrix3d> reps_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  bool abelian_ = true;
  std::vector<std::vector<int>> subgroups_;
};

using GroupPtr = std::shared_ptr<const SymmetryGroup>;

GroupPtr make_group(const GroupSpec& spec);

/// An element of a specific group. Cross-group arithmetic throws.
struct GroupElement {
  GroupPtr group;
  int index = 0;
};

GroupElement mul(const GroupElement& g, const GroupElement& h);
GroupElement inv(const GroupElement& g);

/// Symmetric type k_S from the published count tables (by group family).
/// Throws unsupported for pairs outside them.
int symmetric_type(SurfaceKind surface, const GroupSpec& spec);

/// Symmetric type computed independently: dimension of the subspace of the
/// surface's tangential isometry fields fixed by the group action
/// (rank of the group-averaged action at tolerance 1e-8).
int symmetric_type_numeric(SurfaceKind surface, const SymmetryGroup& group);

/// Same computation restricted to a subgroup (sorted element indices).
int symmetric_type_numeric(SurfaceKind surface, const SymmetryGroup& group,
                           const std::vector<int>& subgroup);

/// True when every representation matrix maps the surface to itself.
bool compatible(SurfaceKind surface, const SymmetryGroup& group);

} // namespace symrig
