#pragma once

#include <cstdint>

#include "sfcnl/core.hpp"

namespace sfcnl {

inline constexpr std::uint32_t kSuperClusterSize = 64;

/// Cluster geometry along the SFC-sorted particle range.
struct ClusterParams {
    std::uint32_t ci = 8;  ///< i-cluster (target) size
    std::uint32_t cj = 8;  ///< j-cluster (source) size, 4 or 8
    std::uint32_t sc_size = kSuperClusterSize;
    int w = 32;            ///< codec/layout block width

    ClusterParams() = default;
    ClusterParams(std::uint32_t ci_, std::uint32_t cj_, int w_ = 32) : ci(ci_), cj(cj_), w(w_) {
        if (ci == 0 || cj == 0) throw InputError("ClusterParams: cluster sizes must be positive");
        if (sc_size % ci != 0 || sc_size % cj != 0)
            throw InputError("ClusterParams: cluster sizes must divide the super-cluster size");
        if (ci % cj != 0) throw InputError("ClusterParams: cj must divide ci");
        if (w != 32 && w != 64) throw InputError("ClusterParams: block width must be 32 or 64");
    }

    std::uint32_t iclusters_per_sc() const { return sc_size / ci; }
    std::uint32_t mask_bytes_per_entry() const { return (iclusters_per_sc() + 7) / 8; }
};

enum class ClusterKind { i, j, super };

/// Derived cluster counts over n particles; trailing clusters may be partial.
struct ClusterIndexing {
    std::uint64_t n = 0;
    ClusterParams params;

    ClusterIndexing() = default;
    ClusterIndexing(std::uint64_t n_, ClusterParams p) : n(n_), params(p) {}

    std::uint64_t num_iclusters() const { return (n + params.ci - 1) / params.ci; }
    std::uint64_t num_jclusters() const { return (n + params.cj - 1) / params.cj; }
    std::uint64_t num_superclusters() const { return (n + params.sc_size - 1) / params.sc_size; }

    std::uint64_t count(ClusterKind kind) const {
        switch (kind) {
            case ClusterKind::i: return num_iclusters();
            case ClusterKind::j: return num_jclusters();
            default: return num_superclusters();
        }
    }

    std::uint32_t width(ClusterKind kind) const {
        switch (kind) {
            case ClusterKind::i: return params.ci;
            case ClusterKind::j: return params.cj;
            default: return params.sc_size;
        }
    }

    /// Half-open particle range of cluster k of the given kind.
    std::pair<std::uint64_t, std::uint64_t> range(ClusterKind kind, std::uint64_t k) const {
        if (k >= count(kind)) throw InputError("cluster_range: index out of range");
        const std::uint64_t wdt = width(kind);
        const std::uint64_t begin = k * wdt;
        return {begin, std::min(begin + wdt, n)};
    }
};

inline std::pair<std::uint64_t, std::uint64_t> cluster_range(ClusterKind kind, std::uint64_t k,
                                                             const ClusterParams& params,
                                                             std::uint64_t n) {
    return ClusterIndexing(n, params).range(kind, k);
}

/// Tight bounding box over a particle range of the sorted set.
inline Aabb cluster_aabb(const ParticleSet& ps, std::uint64_t begin, std::uint64_t end) {
    if (begin >= end) throw InputError("cluster_aabb: empty range");
    Aabb box;
    for (std::uint64_t i = begin; i < end; ++i) box.extend(ps.pos(i));
    return box;
}

/// Largest interaction radius within a particle range.
inline double cluster_max_radius(const ParticleSet& ps, std::uint64_t begin, std::uint64_t end) {
    if (begin >= end) throw InputError("cluster_max_radius: empty range");
    double r = 0;
    for (std::uint64_t i = begin; i < end; ++i) r = std::max(r, ps.h[i]);
    return r;
}

}  // namespace sfcnl
