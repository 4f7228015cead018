#include "sfcnl/octree.hpp"

#include <algorithm>

namespace sfcnl {

namespace {

void subdivide(Octree& tree, std::int32_t node, const std::vector<HilbertKey>& keys,
               std::uint32_t bucket_size) {
    OctreeNode nd = tree.nodes[node];  // copy: vector may reallocate below
    if (nd.count() <= bucket_size || nd.depth >= tree.bits) return;

    const std::int32_t first_child = std::int32_t(tree.nodes.size());
    tree.nodes[node].first_child = first_child;

    const HilbertKey span = (nd.key_last - nd.key_first) / 8;
    const auto begin = keys.begin() + nd.particle_begin;
    const auto end = keys.begin() + nd.particle_end;

    std::uint32_t child_begin = nd.particle_begin;
    for (int c = 0; c < 8; ++c) {
        const HilbertKey child_first = nd.key_first + span * c;
        const HilbertKey child_last = child_first + span;
        // Keys are sorted: the child's particle range ends at the first key >= child_last.
        const std::uint32_t child_end =
            (c == 7) ? nd.particle_end
                     : std::uint32_t(std::lower_bound(begin, end, child_last) - keys.begin());
        OctreeNode child;
        child.key_first = child_first;
        child.key_last = child_last;
        child.particle_begin = child_begin;
        child.particle_end = child_end;
        child.depth = std::uint8_t(nd.depth + 1);
        tree.nodes.push_back(child);
        child_begin = child_end;
    }
    for (int c = 0; c < 8; ++c) subdivide(tree, first_child + c, keys, bucket_size);
}

}  // namespace

Octree build_octree(const SfcOrder& order, std::uint32_t bucket_size) {
    if (bucket_size < 1) throw InputError("build_octree: bucket_size must be >= 1");

    Octree tree;
    tree.bits = order.bits;
    tree.n = std::uint32_t(order.size());

    OctreeNode root;
    root.key_first = 0;
    root.key_last = HilbertKey(1) << (3 * order.bits);
    root.particle_begin = 0;
    root.particle_end = tree.n;
    tree.nodes.push_back(root);

    subdivide(tree, 0, order.keys, bucket_size);
    return tree;
}

Aabb node_aabb(const Octree& tree, std::int32_t node, const ParticleSet& ps) {
    const OctreeNode& nd = tree.nodes.at(std::size_t(node));
    Aabb box;
    for (std::uint32_t i = nd.particle_begin; i < nd.particle_end; ++i) box.extend(ps.pos(i));
    return box;
}

std::vector<Aabb> compute_node_aabbs(const Octree& tree, const ParticleSet& ps) {
    std::vector<Aabb> boxes(tree.nodes.size());
    // Children always follow their parent, so a reverse sweep sees children first.
    for (std::size_t node = tree.nodes.size(); node-- > 0;) {
        const OctreeNode& nd = tree.nodes[node];
        if (nd.is_leaf()) {
            for (std::uint32_t i = nd.particle_begin; i < nd.particle_end; ++i)
                boxes[node].extend(ps.pos(i));
        } else {
            for (int c = 0; c < 8; ++c) boxes[node].extend(boxes[std::size_t(nd.first_child) + c]);
        }
    }
    return boxes;
}

std::vector<double> compute_node_max_radius(const Octree& tree, const ParticleSet& ps) {
    std::vector<double> radius(tree.nodes.size(), 0.0);
    for (std::size_t node = tree.nodes.size(); node-- > 0;) {
        const OctreeNode& nd = tree.nodes[node];
        if (nd.is_leaf()) {
            for (std::uint32_t i = nd.particle_begin; i < nd.particle_end; ++i)
                radius[node] = std::max(radius[node], ps.h[i]);
        } else {
            for (int c = 0; c < 8; ++c)
                radius[node] = std::max(radius[node], radius[std::size_t(nd.first_child) + c]);
        }
    }
    return radius;
}

}  // namespace sfcnl
