#pragma once

#include <cstdint>
#include <optional>

#include "symrig/gain_graph.hpp"
#include "symrig/surface.hpp"

namespace symrig {

/// Opt-in exact-rational rank of the orbit-surface matrix, available for
/// groups whose representation matrices are rational (Ci, C2, C4, S4, C2h,
/// and axis-aligned mirrors / half-turns). Points are drawn from rational
/// parametrizations of the surface, so the rank is computed without any
/// floating-point tolerance. Returns nullopt when the group has no rational
/// representation.
std::optional<int> exact_orbit_surface_rank(const GainGraph& g, SurfaceKind surface,
                                            std::uint64_t seed, int trials = 3);

/// True when the group's matrices are exactly rational in this realization.
bool has_rational_representation(const SymmetryGroup& group);

} // namespace symrig
