#include "symrig/group.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace symrig {

namespace {

Eigen::Matrix3d rot_z(double theta) {
  Eigen::Matrix3d r;
  const double c = std::cos(theta), s = std::sin(theta);
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

Eigen::Matrix3d mirror_horizontal() {
  return Eigen::Vector3d(1, 1, -1).asDiagonal();
}

// Reflection in the vertical plane containing the z-axis at azimuth phi.
Eigen::Matrix3d mirror_containing(double phi) {
  const Eigen::Vector3d n(-std::sin(phi), std::cos(phi), 0.0);
  return Eigen::Matrix3d::Identity() - 2.0 * n * n.transpose();
}

// Half turn about the horizontal axis at azimuth phi.
Eigen::Matrix3d half_turn_perp(double phi) {
  const Eigen::Vector3d a(std::cos(phi), std::sin(phi), 0.0);
  return 2.0 * a * a.transpose() - Eigen::Matrix3d::Identity();
}

int order_of(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::Cs_containing:
    case GroupKind::Cs_horizontal:
    case GroupKind::Ci:
    case GroupKind::C2_perp:
      return 2;
    case GroupKind::Cm:
      return spec.m;
    case GroupKind::Cmh:
    case GroupKind::S2m:
    case GroupKind::Cmv:
    case GroupKind::Dm:
      return 2 * spec.m;
  }
  return 0;
}

std::vector<Eigen::Matrix3d> build_reps(const GroupSpec& spec) {
  std::vector<Eigen::Matrix3d> reps;
  const int m = spec.m;
  switch (spec.kind) {
    case GroupKind::Cs_containing:
      reps = {Eigen::Matrix3d::Identity(), mirror_containing(spec.angle)};
      break;
    case GroupKind::Cs_horizontal:
      reps = {Eigen::Matrix3d::Identity(), mirror_horizontal()};
      break;
    case GroupKind::Ci:
      reps = {Eigen::Matrix3d::Identity(), -Eigen::Matrix3d::Identity()};
      break;
    case GroupKind::C2_perp:
      reps = {Eigen::Matrix3d::Identity(), half_turn_perp(spec.angle)};
      break;
    case GroupKind::Cm:
      for (int a = 0; a < m; ++a) reps.push_back(rot_z(2.0 * M_PI * a / m));
      break;
    case GroupKind::S2m: {
      // Generator powers of the 2m-fold improper rotation.
      const Eigen::Matrix3d gen = rot_z(M_PI / m) * mirror_horizontal();
      Eigen::Matrix3d cur = Eigen::Matrix3d::Identity();
      for (int i = 0; i < 2 * m; ++i) {
        reps.push_back(cur);
        cur = gen * cur;
      }
      break;
    }
    case GroupKind::Cmh:
      // Index a + m*b is C_m^a * s_h^b.
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < m; ++a)
          reps.push_back(rot_z(2.0 * M_PI * a / m) * (b ? mirror_horizontal() : Eigen::Matrix3d::Identity()));
      break;
    case GroupKind::Cmv:
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < m; ++a)
          reps.push_back(rot_z(2.0 * M_PI * a / m) * (b ? mirror_containing(0.0) : Eigen::Matrix3d::Identity()));
      break;
    case GroupKind::Dm:
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < m; ++a)
          reps.push_back(rot_z(2.0 * M_PI * a / m) * (b ? half_turn_perp(0.0) : Eigen::Matrix3d::Identity()));
      break;
  }
  return reps;
}

int match_element(const std::vector<Eigen::Matrix3d>& reps, const Eigen::Matrix3d& m) {
  int found = -1;
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) {
    if ((reps[i] - m).cwiseAbs().maxCoeff() < 1e-9) {
      if (found >= 0) throw invalid_spec("ambiguous element match in group table");
      found = i;
    }
  }
  if (found < 0) throw invalid_spec("group not closed under multiplication");
  return found;
}

// A tangential isometry field X(p) = B p + c of the ambient space.
struct KillingField {
  Eigen::Matrix3d B;
  Eigen::Vector3d c;
};

KillingField rotation_field(const Eigen::Vector3d& axis) {
  Eigen::Matrix3d b;
  b << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
  return {b, Eigen::Vector3d::Zero()};
}

KillingField translation_field(const Eigen::Vector3d& t) {
  return {Eigen::Matrix3d::Zero(), t};
}

std::vector<KillingField> killing_basis(SurfaceKind surface) {
  switch (surface) {
    case SurfaceKind::Sphere:
      return {rotation_field({1, 0, 0}), rotation_field({0, 1, 0}), rotation_field({0, 0, 1})};
    case SurfaceKind::Cylinder:
      return {rotation_field({0, 0, 1}), translation_field({0, 0, 1})};
    case SurfaceKind::Cone:
      return {rotation_field({0, 0, 1})};
  }
  return {};
}

Eigen::VectorXd flatten(const KillingField& f) {
  Eigen::VectorXd v(12);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v(3 * i + j) = f.B(i, j);
  v.segment<3>(9) = f.c;
  return v;
}

} // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Cs_containing: return "Cs_containing";
    case GroupKind::Cs_horizontal: return "Cs_horizontal";
    case GroupKind::Cm: return "Cm";
    case GroupKind::C2_perp: return "C2_perp";
    case GroupKind::Ci: return "Ci";
    case GroupKind::Cmh: return "Cmh";
    case GroupKind::S2m: return "S2m";
    case GroupKind::Cmv: return "Cmv";
    case GroupKind::Dm: return "Dm";
  }
  return "?";
}

std::string to_string(const GroupSpec& spec) {
  std::string s = to_string(spec.kind);
  switch (spec.kind) {
    case GroupKind::Cm:
    case GroupKind::Cmh:
    case GroupKind::S2m:
    case GroupKind::Cmv:
    case GroupKind::Dm:
      s += ":" + std::to_string(spec.m);
      break;
    default:
      break;
  }
  return s;
}

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Cylinder: return "cylinder";
    case SurfaceKind::Cone: return "cone";
  }
  return "?";
}

SymmetryGroup::SymmetryGroup(const GroupSpec& spec) : spec_(spec) {
  if (spec.m < 1) throw invalid_spec("group parameter m must be >= 1");
  order_ = order_of(spec);
  reps_ = build_reps(spec);

  for (const auto& r : reps_) {
    if ((r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-12)
      throw invalid_spec("representation matrix not orthogonal");
  }

  table_.assign(order_ * order_, -1);
  inverse_.assign(order_, -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      const int p = match_element(reps_, reps_[a] * reps_[b]);
      table_[a * order_ + b] = p;
      if (p == 0) inverse_[a] = b;
    }
  }
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) abelian_ = false;

  // Subgroup lattice, precomputed so shared instances stay immutable. The
  // groups in scope (cyclic, Z_m x Z_2, dihedral) are all generated by at
  // most two elements.
  std::set<std::vector<int>> found;
  for (int a = 0; a < order_; ++a) {
    found.insert(closure({a}));
    for (int b = a + 1; b < order_; ++b) found.insert(closure({a, b}));
  }
  subgroups_.assign(found.begin(), found.end());
}

std::vector<int> SymmetryGroup::closure(const std::vector<int>& generators) const {
  std::set<int> members = {0};
  std::vector<int> frontier = {0};
  for (int g : generators)
    if (members.insert(g).second) frontier.push_back(g);
  while (!frontier.empty()) {
    const int g = frontier.back();
    frontier.pop_back();
    for (int h : std::set<int>(members)) {
      for (int p : {mul(g, h), mul(h, g)})
        if (members.insert(p).second) frontier.push_back(p);
    }
  }
  return {members.begin(), members.end()};
}

const std::vector<std::vector<int>>& SymmetryGroup::subgroups() const { return subgroups_; }

bool SymmetryGroup::all_z_rotations(const std::vector<int>& elements) const {
  for (int g : elements) {
    const Eigen::Matrix3d& r = reps_[g];
    if (r.determinant() < 0) return false;
    if ((r * Eigen::Vector3d::UnitZ() - Eigen::Vector3d::UnitZ()).norm() > 1e-9) return false;
  }
  return true;
}

bool SymmetryGroup::trivial_or_inversion(const std::vector<int>& elements) const {
  for (int g : elements) {
    if (g == 0) continue;
    if ((reps_[g] + Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9) return false;
  }
  return true;
}

GroupPtr make_group(const GroupSpec& spec) {
  return std::make_shared<const SymmetryGroup>(spec);
}

GroupElement mul(const GroupElement& g, const GroupElement& h) {
  if (g.group != h.group) throw invalid_argument("elements of different groups");
  return {g.group, g.group->mul(g.index, h.index)};
}

GroupElement inv(const GroupElement& g) {
  return {g.group, g.group->inv(g.index)};
}

bool compatible(SurfaceKind surface, const SymmetryGroup& group) {
  if (surface == SurfaceKind::Sphere) return true;
  // Cylinder and cone are preserved exactly by the orthogonal maps fixing
  // the z-axis up to sign.
  for (int g = 0; g < group.order(); ++g) {
    const Eigen::Vector3d ze = group.rep(g) * Eigen::Vector3d::UnitZ();
    if (std::abs(std::abs(ze.z()) - 1.0) > 1e-9) return false;
  }
  return true;
}

int symmetric_type_numeric(SurfaceKind surface, const SymmetryGroup& group,
                           const std::vector<int>& subgroup) {
  if (!compatible(surface, group))
    throw unsupported("group incompatible with surface: " + to_string(group.spec()));
  const auto basis = killing_basis(surface);
  const int d = static_cast<int>(basis.size());
  Eigen::MatrixXd basis_mat(12, d);
  for (int j = 0; j < d; ++j) basis_mat.col(j) = flatten(basis[j]);

  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(d, d);
  for (int g : subgroup) {
    const Eigen::Matrix3d& r = group.rep(g);
    Eigen::MatrixXd action(12, d);
    for (int j = 0; j < d; ++j) {
      KillingField f{r * basis[j].B * r.transpose(), r * basis[j].c};
      action.col(j) = flatten(f);
    }
    // Coordinates of the transformed fields in the basis; the residual is
    // zero exactly when the group maps the tangential isometries of the
    // surface into themselves.
    Eigen::MatrixXd coeffs = basis_mat.colPivHouseholderQr().solve(action);
    if ((basis_mat * coeffs - action).cwiseAbs().maxCoeff() > 1e-8)
      throw unsupported("group does not act on the surface's isometries");
    avg += coeffs;
  }
  avg /= static_cast<double>(subgroup.size());

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(avg);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-8) ++rank;
  return rank;
}

int symmetric_type_numeric(SurfaceKind surface, const SymmetryGroup& group) {
  std::vector<int> all(group.order());
  for (int i = 0; i < group.order(); ++i) all[i] = i;
  return symmetric_type_numeric(surface, group, all);
}

int symmetric_type(SurfaceKind surface, const GroupSpec& spec) {
  // m = 1 degenerates each parametric family to a smaller group.
  if (spec.m == 1) {
    switch (spec.kind) {
      case GroupKind::Cm: // trivial group
        return Surface(surface).type();
      case GroupKind::Cmh: return symmetric_type(surface, GroupSpec::Cs_horizontal());
      case GroupKind::S2m: return symmetric_type(surface, GroupSpec::Ci());
      case GroupKind::Cmv: return symmetric_type(surface, GroupSpec::Cs_containing(spec.angle));
      case GroupKind::Dm: return symmetric_type(surface, GroupSpec::C2_perp(spec.angle));
      default: break;
    }
  }
  switch (surface) {
    case SurfaceKind::Sphere:
      switch (spec.kind) {
        case GroupKind::Cs_containing:
        case GroupKind::Cs_horizontal: return 1;
        case GroupKind::Cm: return 1;
        case GroupKind::C2_perp: return 1;
        case GroupKind::Ci: return 3;
        case GroupKind::Cmh: return 1;
        case GroupKind::S2m: return 1;
        case GroupKind::Cmv: return 0;
        case GroupKind::Dm: return 0;
      }
      break;
    case SurfaceKind::Cylinder:
      switch (spec.kind) {
        case GroupKind::Cs_containing:
        case GroupKind::Cs_horizontal: return 1;
        case GroupKind::Cm: return 2;
        case GroupKind::C2_perp: return 0;
        case GroupKind::Ci: return 1;
        case GroupKind::Cmh: return 1;
        case GroupKind::S2m: return 1;
        case GroupKind::Cmv: return 1;
        case GroupKind::Dm: return 0;
      }
      break;
    case SurfaceKind::Cone:
      switch (spec.kind) {
        case GroupKind::Cs_containing: return 0;
        case GroupKind::Cs_horizontal: return 1;
        case GroupKind::Cm: return 1;
        case GroupKind::C2_perp: return 0;
        case GroupKind::Ci: return 1;
        case GroupKind::Cmh: return 1;
        case GroupKind::S2m: return 1;
        case GroupKind::Cmv: return 0;
        case GroupKind::Dm: return 0;
      }
      break;
  }
  throw unsupported("no symmetric type for " + to_string(spec) + " on " + to_string(surface));
}

} // namespace symrig
