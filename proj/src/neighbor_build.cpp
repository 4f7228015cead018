#include "sfcnl/neighbor_build.hpp"

#include <algorithm>

#include "sfcnl/nibble_codec.hpp"
#include "sfcnl/parallel.hpp"

namespace sfcnl {

namespace {

struct ClusterGeometry {
    std::vector<Aabb> iaabb;
    std::vector<double> imaxh;
    std::vector<Aabb> jaabb;
    std::vector<double> jmaxh;
};

ClusterGeometry compute_cluster_geometry(const ParticleSet& ps, const ClusterIndexing& idx) {
    ClusterGeometry g;
    const std::uint64_t ni = idx.num_iclusters();
    const std::uint64_t nj = idx.num_jclusters();
    g.iaabb.resize(ni);
    g.imaxh.resize(ni);
    g.jaabb.resize(nj);
    g.jmaxh.resize(nj);
    for (std::uint64_t k = 0; k < ni; ++k) {
        const auto [b, e] = idx.range(ClusterKind::i, k);
        g.iaabb[k] = cluster_aabb(ps, b, e);
        g.imaxh[k] = cluster_max_radius(ps, b, e);
    }
    for (std::uint64_t k = 0; k < nj; ++k) {
        const auto [b, e] = idx.range(ClusterKind::j, k);
        g.jaabb[k] = cluster_aabb(ps, b, e);
        g.jmaxh[k] = cluster_max_radius(ps, b, e);
    }
    return g;
}

/// Depth-first traversal collecting the j-clusters of every leaf whose box is
/// within `radius(node)` of `target`. Candidates come out ascending because
/// children are visited in key order.
template <class RadiusFn>
void collect_candidates(const Octree& tree, const std::vector<Aabb>& node_aabbs,
                        const SimulationBox& box, const Aabb& target, RadiusFn&& radius,
                        std::uint32_t cj, std::vector<std::uint32_t>& out) {
    out.clear();
    std::vector<std::int32_t> stack{0};
    while (!stack.empty()) {
        const std::int32_t node = stack.back();
        stack.pop_back();
        const OctreeNode& nd = tree.nodes[std::size_t(node)];
        if (nd.count() == 0) continue;
        const double r = radius(std::size_t(node));
        if (aabb_dist_sq(target, node_aabbs[std::size_t(node)], box) > r * r) continue;
        if (nd.is_leaf()) {
            const std::uint32_t first = nd.particle_begin / cj;
            const std::uint32_t last = (nd.particle_end - 1) / cj;
            for (std::uint32_t j = first; j <= last; ++j)
                if (out.empty() || out.back() != j) out.push_back(j);
        } else {
            for (int c = 7; c >= 0; --c) stack.push_back(nd.first_child + c);
        }
    }
}

struct ScEntries {
    std::vector<std::uint32_t> jclusters;
    std::vector<std::uint64_t> masks;
};

}  // namespace

NeighborStore build_neighbor_store(const ParticleSet& ps, const SimulationBox& box,
                                   const Octree& tree, const BuildParams& bp, int threads) {
    validate(ps, box);
    const std::uint64_t n = ps.size();
    if (tree.n != n) throw BuildError("build_neighbor_store: octree/particle-set mismatch");
    const ClusterIndexing idx(n, bp.params);
    const bool symmetric = bp.mode == ListMode::symmetric;
    const double scale = bp.build_radius_scale;

    double max_h = 0;
    for (double hv : ps.h) max_h = std::max(max_h, hv);
    for (int d = 0; d < 3; ++d)
        if (box.periodic[d] && box.length(d) < 2.0 * scale * max_h)
            throw BuildError("build_neighbor_store: periodic box must span twice the largest cutoff");

    NeighborStore store;
    store.build = bp;
    store.n = n;
    const std::uint64_t num_sc = idx.num_superclusters();
    store.counts.assign(num_sc, 0);
    store.offsets.assign(num_sc + 1, 0);
    if (n == 0) return store;

    const ClusterGeometry geom = compute_cluster_geometry(ps, idx);
    const std::vector<Aabb> node_aabbs = compute_node_aabbs(tree, ps);
    std::vector<double> node_maxh;
    if (symmetric) node_maxh = compute_node_max_radius(tree, ps);

    const std::uint32_t ci = bp.params.ci;
    const std::uint32_t cj = bp.params.cj;
    const std::uint32_t icl_per_sc = bp.params.iclusters_per_sc();
    const std::uint64_t num_icl = idx.num_iclusters();

    std::vector<ScEntries> results(num_sc);

    parallel_for(num_sc, threads, [&](std::uint64_t sc) {
        const std::uint64_t icl_base = sc * icl_per_sc;
        const std::uint64_t icl_end = std::min<std::uint64_t>(icl_base + icl_per_sc, num_icl);

        Aabb sc_aabb;
        double sc_maxh = 0;
        for (std::uint64_t gi = icl_base; gi < icl_end; ++gi) {
            sc_aabb.extend(geom.iaabb[gi]);
            sc_maxh = std::max(sc_maxh, geom.imaxh[gi]);
        }

        std::vector<std::uint32_t> candidates;
        collect_candidates(
            tree, node_aabbs, box, sc_aabb,
            [&](std::size_t node) {
                return symmetric ? scale * std::max(sc_maxh, node_maxh[node]) : scale * sc_maxh;
            },
            cj, candidates);

        ScEntries& entries = results[sc];
        for (const std::uint32_t jcl : candidates) {
            const auto [jb, je] = idx.range(ClusterKind::j, jcl);
            const std::uint64_t jstart = std::uint64_t(jcl) * cj;
            std::uint64_t mask = 0;
            for (std::uint64_t gi = icl_base; gi < icl_end; ++gi) {
                // Half-list rule: the pair lives on the side whose i-cluster starts first.
                if (symmetric && gi * ci > jstart) continue;
                const double pre_r =
                    scale * (symmetric ? std::max(geom.imaxh[gi], geom.jmaxh[jcl]) : geom.imaxh[gi]);
                if (aabb_dist_sq(geom.iaabb[gi], geom.jaabb[jcl], box) > pre_r * pre_r) continue;

                const auto [ib, ie] = idx.range(ClusterKind::i, gi);
                bool hit = false;
                for (std::uint64_t i = ib; i < ie && !hit; ++i) {
                    const Vec3 pi = ps.pos(i);
                    for (std::uint64_t j = jb; j < je; ++j) {
                        if (i == j) continue;
                        const double r =
                            scale * (symmetric ? std::max(ps.h[i], ps.h[j]) : ps.h[i]);
                        const auto [dxy, d2] = periodic_delta(pi, ps.pos(j), box);
                        if (d2 <= r * r) {
                            hit = true;
                            break;
                        }
                    }
                }
                if (hit) mask |= std::uint64_t(1) << (gi - icl_base);
            }
            if (mask) {
                entries.jclusters.push_back(jcl);
                entries.masks.push_back(mask);
            }
        }
    });

    // Deterministic placement: serialize per-super-cluster blobs in order.
    const std::uint32_t mask_bytes = bp.params.mask_bytes_per_entry();
    for (std::uint64_t sc = 0; sc < num_sc; ++sc) {
        const ScEntries& entries = results[sc];
        store.counts[sc] = std::uint32_t(entries.jclusters.size());
        store.offsets[sc] = store.blob.size();
        for (const std::uint64_t mask : entries.masks)
            for (std::uint32_t b = 0; b < mask_bytes; ++b)
                store.blob.push_back(std::uint8_t((mask >> (8 * b)) & 0xff));
        if (bp.compress) {
            const codec::EncodedList enc = codec::encode(entries.jclusters, bp.params.w);
            store.blob.insert(store.blob.end(), enc.bytes.begin(), enc.bytes.end());
        } else {
            for (const std::uint32_t jcl : entries.jclusters)
                for (int b = 0; b < 4; ++b)
                    store.blob.push_back(std::uint8_t((jcl >> (8 * b)) & 0xff));
        }
    }
    store.offsets[num_sc] = store.blob.size();
    return store;
}

}  // namespace sfcnl
