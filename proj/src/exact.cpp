#include "symrig/exact.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cmath>
#include <vector>

#include "symrig/rng.hpp"

namespace symrig {

namespace {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;
using RatVec = std::array<Rat, 3>;
using RatMat = std::array<std::array<Rat, 3>, 3>;

std::optional<Rat> as_rational(double x) {
  // The rational groups only produce entries in {-1, 0, 1}.
  for (int v : {-1, 0, 1})
    if (std::abs(x - v) < 1e-12) return Rat(v);
  return std::nullopt;
}

std::optional<RatMat> rational_rep(const Eigen::Matrix3d& m) {
  RatMat out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto r = as_rational(m(i, j));
      if (!r) return std::nullopt;
      out[i][j] = *r;
    }
  return out;
}

RatVec mat_vec(const RatMat& m, const RatVec& v) {
  RatVec out;
  for (int i = 0; i < 3; ++i)
    out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

RatVec sub(const RatVec& a, const RatVec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// Rational point away from the coordinate planes: sphere via stereographic
// projection, cylinder/cone via the Pythagorean circle parametrization.
RatVec rational_point(SurfaceKind surface, Rng& rng) {
  auto small = [&](int lo, int hi) { return Rat(Int(lo + rng.below(hi - lo + 1))); };
  const Rat t = small(1, 9) / small(10, 17);
  const Rat one(1);
  const Rat c = (one - t * t) / (one + t * t);
  const Rat s = (t + t) / (one + t * t);
  switch (surface) {
    case SurfaceKind::Sphere: {
      const Rat u = small(1, 9) / small(10, 17);
      // (2t, 2u, t^2+u^2-1) / (t^2+u^2+1)
      const Rat d = t * t + u * u + one;
      return {(t + t) / d, (u + u) / d, (t * t + u * u - one) / d};
    }
    case SurfaceKind::Cylinder:
      return {c, s, small(1, 7) / small(2, 5)};
    case SurfaceKind::Cone: {
      const Rat z = small(1, 9) / small(2, 5) * (rng.coin() ? Rat(1) : Rat(-1));
      return {z * c, z * s, z};
    }
  }
  return {Rat(0), Rat(0), Rat(0)};
}

RatVec rational_normal(SurfaceKind surface, const RatVec& p) {
  switch (surface) {
    case SurfaceKind::Sphere: return p;
    case SurfaceKind::Cylinder: return {p[0], p[1], Rat(0)};
    case SurfaceKind::Cone: return {p[0], p[1], -p[2]};
  }
  return {Rat(0), Rat(0), Rat(0)};
}

int rational_rank(std::vector<std::vector<Rat>> m) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] != Rat(0)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][col] == Rat(0)) continue;
      const Rat f = m[r][col] / m[rank][col];
      for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

} // namespace

bool has_rational_representation(const SymmetryGroup& group) {
  for (int g = 0; g < group.order(); ++g)
    if (!rational_rep(group.rep(g))) return false;
  return true;
}

std::optional<int> exact_orbit_surface_rank(const GainGraph& g, SurfaceKind surface,
                                            std::uint64_t seed, int trials) {
  const SymmetryGroup& s = g.group();
  std::vector<RatMat> reps;
  for (int i = 0; i < s.order(); ++i) {
    auto r = rational_rep(s.rep(i));
    if (!r) return std::nullopt;
    reps.push_back(*r);
  }
  const int nv = g.vertex_count();
  const int ne = g.edge_count();
  int best = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    std::vector<RatVec> pts;
    for (int v = 0; v < nv; ++v) pts.push_back(rational_point(surface, rng));
    // Exact freeness / non-degeneracy; resample the trial on a collision.
    bool degenerate = false;
    for (int e = 0; e < s.order() && !degenerate; ++e)
      for (const auto& p : pts)
        if (e != 0 && mat_vec(reps[e], p) == p) degenerate = true;
    for (const auto& e : g.edges())
      if (mat_vec(reps[e.gain], pts[e.head]) == pts[e.tail]) degenerate = true;
    if (degenerate) continue;

    std::vector<std::vector<Rat>> m(ne + nv, std::vector<Rat>(3 * nv, Rat(0)));
    for (int ei = 0; ei < ne; ++ei) {
      const GainEdge& e = g.edge(ei);
      if (e.is_loop()) {
        const RatVec a = mat_vec(reps[e.gain], pts[e.tail]);
        const RatVec b = mat_vec(reps[s.inv(e.gain)], pts[e.tail]);
        for (int c = 0; c < 3; ++c)
          m[ei][3 * e.tail + c] = pts[e.tail][c] + pts[e.tail][c] - a[c] - b[c];
      } else {
        const RatVec a = sub(pts[e.tail], mat_vec(reps[e.gain], pts[e.head]));
        const RatVec b = sub(pts[e.head], mat_vec(reps[s.inv(e.gain)], pts[e.tail]));
        for (int c = 0; c < 3; ++c) {
          m[ei][3 * e.tail + c] = a[c];
          m[ei][3 * e.head + c] = b[c];
        }
      }
    }
    for (int v = 0; v < nv; ++v) {
      const RatVec n = rational_normal(surface, pts[v]);
      for (int c = 0; c < 3; ++c) m[ne + v][3 * v + c] = n[c];
    }
    best = std::max(best, rational_rank(std::move(m)));
  }
  return best;
}

} // namespace symrig
