#pragma once

#include "sfcnl/neighbor_store.hpp"
#include "sfcnl/octree.hpp"

namespace sfcnl {

/// Builds the per-super-cluster neighbor store by depth-first octree traversal.
///
/// Completeness: every particle pair (i, j), i != j, with minimum-image distance
/// within build_radius_scale * h_i (gather) or build_radius_scale * max(h_i, h_j)
/// (symmetric) is covered by a stored j-cluster whose bitmask bit for i's
/// i-cluster is set. In symmetric mode each unordered cluster pair is stored on
/// the side whose i-cluster starts first along the curve.
///
/// The particle set must be in SFC order and, on periodic axes, the box must be
/// at least twice the largest effective cutoff (throws BuildError otherwise).
NeighborStore build_neighbor_store(const ParticleSet& ps, const SimulationBox& box,
                                   const Octree& tree, const BuildParams& bp, int threads = 1);

}  // namespace sfcnl
