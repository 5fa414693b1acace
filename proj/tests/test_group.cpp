#include <doctest.h>

#include "symrig/group.hpp"

using namespace symrig;

namespace {

void check_group_axioms(const SymmetryGroup& g) {
  CHECK((g.rep(0) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  for (int a = 0; a < g.order(); ++a) {
    CHECK((g.rep(a) * g.rep(a).transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(g.mul(a, g.inv(a)) == 0);
    for (int b = 0; b < g.order(); ++b) {
      const int p = g.mul(a, b);
      CHECK(p >= 0);
      CHECK(p < g.order());
      CHECK((g.rep(p) - g.rep(a) * g.rep(b)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

} // namespace

TEST_CASE("group orders and spec validation") {
  CHECK(make_group(GroupSpec::Ci())->order() == 2);
  CHECK(make_group(GroupSpec::Cs_containing())->order() == 2);
  CHECK(make_group(GroupSpec::Cs_horizontal())->order() == 2);
  CHECK(make_group(GroupSpec::C2_perp())->order() == 2);
  CHECK(make_group(GroupSpec::Cm(5))->order() == 5);
  CHECK(make_group(GroupSpec::Cmh(3))->order() == 6);
  CHECK(make_group(GroupSpec::S2m(3))->order() == 6);
  CHECK(make_group(GroupSpec::Cmv(3))->order() == 6);
  CHECK(make_group(GroupSpec::Dm(4))->order() == 8);
  CHECK_THROWS_AS(make_group(GroupSpec::Cm(0)), invalid_spec);
}

TEST_CASE("representation axioms hold for every family") {
  for (const auto& spec :
       {GroupSpec::Ci(), GroupSpec::Cs_containing(0.7), GroupSpec::Cs_horizontal(),
        GroupSpec::C2_perp(1.1), GroupSpec::Cm(4), GroupSpec::Cmh(3), GroupSpec::S2m(2),
        GroupSpec::Cmv(3), GroupSpec::Dm(3)})
    check_group_axioms(*make_group(spec));
}

TEST_CASE("inversion is -I") {
  auto g = make_group(GroupSpec::Ci());
  CHECK((g->rep(1) + Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("C4 generator is the quarter turn about z") {
  auto g = make_group(GroupSpec::Cm(4));
  Eigen::Matrix3d want;
  want << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((g->rep(1) - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("C2h consists of diagonal sign matrices with equal xy signs") {
  auto g = make_group(GroupSpec::Cmh(2));
  REQUIRE(g->order() == 4);
  for (int i = 0; i < 4; ++i) {
    const Eigen::Matrix3d& r = g->rep(i);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a != b) CHECK(std::abs(r(a, b)) < 1e-12);
    CHECK(r(0, 0) == doctest::Approx(r(1, 1)));
    CHECK(std::abs(std::abs(r(2, 2)) - 1.0) < 1e-12);
  }
}

TEST_CASE("element arithmetic") {
  auto c3 = make_group(GroupSpec::Cm(3));
  CHECK(c3->mul(1, 2) == 0);
  CHECK(c3->inv(1) == 2);

  auto d3 = make_group(GroupSpec::Dm(3));
  const int rot = 1, flip = 3;
  CHECK(d3->mul(flip, rot) != d3->mul(rot, flip));
  CHECK_FALSE(d3->abelian());

  auto ci = make_group(GroupSpec::Ci());
  CHECK(ci->inv(1) == 1);
  CHECK(ci->abelian());
  CHECK(make_group(GroupSpec::Cmh(4))->abelian());
  CHECK(make_group(GroupSpec::S2m(3))->abelian());

  GroupElement a{c3, 1}, b{c3, 2};
  CHECK(mul(a, b).index == 0);
  CHECK(inv(a).index == 2);
  GroupElement foreign{ci, 1};
  CHECK_THROWS_AS(mul(a, foreign), invalid_argument);
}

TEST_CASE("determinant separates proper and improper elements") {
  CHECK(make_group(GroupSpec::Cm(3))->rep(1).determinant() > 0);
  CHECK(make_group(GroupSpec::C2_perp())->rep(1).determinant() > 0);
  CHECK(make_group(GroupSpec::Ci())->rep(1).determinant() < 0);
  CHECK(make_group(GroupSpec::Cs_horizontal())->rep(1).determinant() < 0);
  CHECK(make_group(GroupSpec::S2m(2))->rep(1).determinant() < 0);
  // Odd powers of an improper rotation are improper, even powers proper.
  auto s6 = make_group(GroupSpec::S2m(3));
  for (int i = 0; i < s6->order(); ++i)
    CHECK(s6->rep(i).determinant() * (i % 2 == 0 ? 1.0 : -1.0) > 0);
}

TEST_CASE("symmetric type table") {
  CHECK(symmetric_type(SurfaceKind::Cylinder, GroupSpec::Cm(3)) == 2);
  CHECK(symmetric_type(SurfaceKind::Sphere, GroupSpec::Ci()) == 3);
  CHECK(symmetric_type(SurfaceKind::Cone, GroupSpec::Cs_containing()) == 0);
  CHECK(symmetric_type(SurfaceKind::Cylinder, GroupSpec::C2_perp()) == 0);
  CHECK(symmetric_type(SurfaceKind::Sphere, GroupSpec::Cmv(3)) == 0);
  CHECK(symmetric_type(SurfaceKind::Cylinder, GroupSpec::Cmh(2)) == 1);
  // m = 1 families coincide with smaller groups.
  CHECK(symmetric_type(SurfaceKind::Sphere, GroupSpec::S2m(1)) == 3);
  CHECK(symmetric_type(SurfaceKind::Sphere, GroupSpec::Cm(1)) == 3);
  CHECK(symmetric_type(SurfaceKind::Cone, GroupSpec::Cmh(1)) == 1);
}

TEST_CASE("numeric symmetric type: worked examples") {
  // Inversion fixes every rotation field; the perpendicular half-turn
  // negates both cylinder fields; only the z-rotation lives on the cone.
  CHECK(symmetric_type_numeric(SurfaceKind::Sphere, *make_group(GroupSpec::Ci())) == 3);
  CHECK(symmetric_type_numeric(SurfaceKind::Cylinder, *make_group(GroupSpec::C2_perp())) == 0);
  CHECK(symmetric_type_numeric(SurfaceKind::Cone, *make_group(GroupSpec::Cm(5))) == 1);
}

TEST_CASE("numeric symmetric type agrees with the table everywhere") {
  for (const auto& spec :
       {GroupSpec::Ci(), GroupSpec::Cs_containing(), GroupSpec::Cs_horizontal(),
        GroupSpec::C2_perp(), GroupSpec::Cm(2), GroupSpec::Cm(3), GroupSpec::Cm(6),
        GroupSpec::Cmh(2), GroupSpec::Cmh(3), GroupSpec::S2m(2), GroupSpec::S2m(3),
        GroupSpec::Cmv(2), GroupSpec::Cmv(3), GroupSpec::Dm(2), GroupSpec::Dm(3)}) {
    for (auto surface : {SurfaceKind::Sphere, SurfaceKind::Cylinder, SurfaceKind::Cone}) {
      CAPTURE(to_string(spec));
      CAPTURE(to_string(surface));
      CHECK(symmetric_type_numeric(surface, *make_group(spec)) ==
            symmetric_type(surface, spec));
    }
  }
}

TEST_CASE("subgroup lattice and subgroup classification") {
  auto c2h = make_group(GroupSpec::Cmh(2));
  CHECK(c2h->subgroups().size() == 5); // trivial, three of order 2, full
  auto d3 = make_group(GroupSpec::Dm(3));
  CHECK(d3->subgroups().size() == 6); // trivial, C3, three half-turns, full
  CHECK(symmetric_type_numeric(SurfaceKind::Sphere, *d3, d3->closure({1})) == 1);
  CHECK(symmetric_type_numeric(SurfaceKind::Sphere, *d3, {0}) == 3);
  CHECK(d3->all_z_rotations(d3->closure({1})));
  CHECK_FALSE(d3->all_z_rotations(d3->closure({3})));
  auto c2h_inv = c2h->closure({3}); // C2 * s_h = -I
  CHECK(c2h->trivial_or_inversion(c2h_inv));
  CHECK_FALSE(c2h->trivial_or_inversion(c2h->closure({1})));
}
