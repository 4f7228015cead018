#pragma once

#include <cstdint>

#include "sfcnl/core.hpp"
#include "sfcnl/hilbert.hpp"

namespace sfcnl {

/// One node of the implicit octree over the sorted key range.
struct OctreeNode {
    HilbertKey key_first = 0;        ///< [key_first, key_last) SFC-key range
    HilbertKey key_last = 0;
    std::uint32_t particle_begin = 0; ///< [particle_begin, particle_end) into sorted arrays
    std::uint32_t particle_end = 0;
    std::int32_t first_child = -1;    ///< index of 8 contiguous children, -1 for leaves
    std::uint8_t depth = 0;

    bool is_leaf() const { return first_child < 0; }
    std::uint32_t count() const { return particle_end - particle_begin; }
};

/// Octree over a sorted SFC key range. Node 0 is the root; children of an
/// internal node are stored contiguously and partition the parent's key range.
struct Octree {
    std::vector<OctreeNode> nodes;
    int bits = kDefaultSfcBits;
    std::uint32_t n = 0;

    const OctreeNode& root() const { return nodes.front(); }

    template <class Fn>
    void for_each_leaf(Fn&& fn) const {
        for_each_leaf_from(0, fn);
    }

    template <class Fn>
    void for_each_leaf_from(std::int32_t node, Fn&& fn) const {
        const OctreeNode& nd = nodes[node];
        if (nd.is_leaf()) {
            fn(node, nd);
            return;
        }
        for (int c = 0; c < 8; ++c) for_each_leaf_from(nd.first_child + c, fn);
    }
};

/// Builds the octree: leaves hold at most bucket_size particles unless the
/// maximum depth (bits per dimension) forces larger buckets. An empty particle
/// set yields a single empty root leaf.
Octree build_octree(const SfcOrder& order, std::uint32_t bucket_size = 64);

/// Tight bounding box over the node's particles; empty nodes give an empty box.
Aabb node_aabb(const Octree& tree, std::int32_t node, const ParticleSet& ps);

/// Tight boxes for every node, computed bottom-up.
std::vector<Aabb> compute_node_aabbs(const Octree& tree, const ParticleSet& ps);

/// Maximum interaction radius per node (0 for empty nodes), computed bottom-up.
std::vector<double> compute_node_max_radius(const Octree& tree, const ParticleSet& ps);

}  // namespace sfcnl
