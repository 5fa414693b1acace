#pragma once

#include <Eigen/Dense>
#include <string>

#include "symrig/errors.hpp"

namespace symrig {

enum class SurfaceKind { Sphere, Cylinder, Cone };

std::string to_string(SurfaceKind kind);

/// Unit sphere x^2+y^2+z^2=1, unit cylinder x^2+y^2=1 about the z-axis,
/// and the cone x^2+y^2=z^2. The type is the dimension of the space of
/// tangential isometries (3, 2, 1 respectively).
struct Surface {
  SurfaceKind kind;

  explicit Surface(SurfaceKind k) : kind(k) {}

  int type() const {
    switch (kind) {
      case SurfaceKind::Sphere: return 3;
      case SurfaceKind::Cylinder: return 2;
      case SurfaceKind::Cone: return 1;
    }
    return 0;
  }

  /// Signed implicit-equation residual at p (zero on the surface).
  double residual(const Eigen::Vector3d& p) const {
    switch (kind) {
      case SurfaceKind::Sphere: return p.squaredNorm() - 1.0;
      case SurfaceKind::Cylinder: return p.x() * p.x() + p.y() * p.y() - 1.0;
      case SurfaceKind::Cone: return p.x() * p.x() + p.y() * p.y() - p.z() * p.z();
    }
    return 0.0;
  }

  bool contains(const Eigen::Vector3d& p, double tol = 1e-10) const {
    return std::abs(residual(p)) <= tol;
  }

  /// Normal direction at p: sphere -> p, cylinder -> (x,y,0),
  /// cone -> (x,y,-z). The cone apex has no normal.
  Eigen::Vector3d normal(const Eigen::Vector3d& p) const {
    switch (kind) {
      case SurfaceKind::Sphere: return p;
      case SurfaceKind::Cylinder: return {p.x(), p.y(), 0.0};
      case SurfaceKind::Cone:
        if (p.norm() < 1e-12)
          throw invalid_argument("surface normal undefined at the cone apex");
        return {p.x(), p.y(), -p.z()};
    }
    return Eigen::Vector3d::Zero();
  }
};

} // namespace symrig
