#pragma once

#include <cstdint>

#include "sfcnl/core.hpp"

namespace sfcnl {

/// Default key resolution: 21 bits per dimension packs into a 63-bit key.
inline constexpr int kDefaultSfcBits = 21;
inline constexpr int kMaxSfcBits = 21;

/// 64-bit Hilbert key; keys of cells consecutive along the curve differ by 1.
using HilbertKey = std::uint64_t;

namespace hilbert_detail {

// Transform between grid axes and the Hilbert "transpose" representation,
// after Skilling, "Programming the Hilbert curve" (2004).
inline void axes_to_transpose(std::uint32_t* X, int bits) {
    for (std::uint32_t q = 1u << (bits - 1); q > 1; q >>= 1) {
        const std::uint32_t p = q - 1;
        for (int i = 0; i < 3; ++i) {
            if (X[i] & q) {
                X[0] ^= p;
            } else {
                const std::uint32_t t = (X[0] ^ X[i]) & p;
                X[0] ^= t;
                X[i] ^= t;
            }
        }
    }
    for (int i = 1; i < 3; ++i) X[i] ^= X[i - 1];
    std::uint32_t t = 0;
    for (std::uint32_t q = 1u << (bits - 1); q > 1; q >>= 1)
        if (X[2] & q) t ^= q - 1;
    for (int i = 0; i < 3; ++i) X[i] ^= t;
}

inline void transpose_to_axes(std::uint32_t* X, int bits) {
    const std::uint32_t n = 2u << (bits - 1);
    std::uint32_t t = X[2] >> 1;
    for (int i = 2; i > 0; --i) X[i] ^= X[i - 1];
    X[0] ^= t;
    for (std::uint32_t q = 2; q != n; q <<= 1) {
        const std::uint32_t p = q - 1;
        for (int i = 2; i >= 0; --i) {
            if (X[i] & q) {
                X[0] ^= p;
            } else {
                t = (X[0] ^ X[i]) & p;
                X[0] ^= t;
                X[i] ^= t;
            }
        }
    }
}

}  // namespace hilbert_detail

inline void check_sfc_bits(int bits) {
    if (bits < 1 || bits > kMaxSfcBits) throw InputError("bits per dimension must be in [1, 21]");
}

/// Encodes grid coordinates (each < 2^bits) into a Hilbert key < 2^(3*bits).
inline HilbertKey hilbert_encode(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz, int bits) {
    check_sfc_bits(bits);
    const std::uint32_t lim = (bits == 32) ? 0xffffffffu : ((1u << bits) - 1);
    if (ix > lim || iy > lim || iz > lim) throw InputError("grid coordinate out of range");
    std::uint32_t X[3] = {ix, iy, iz};
    hilbert_detail::axes_to_transpose(X, bits);
    // Interleave the transpose, most significant plane first.
    HilbertKey key = 0;
    for (int b = bits - 1; b >= 0; --b)
        for (int i = 0; i < 3; ++i) key = (key << 1) | ((X[i] >> b) & 1u);
    return key;
}

/// Inverse of hilbert_encode.
inline std::array<std::uint32_t, 3> hilbert_decode(HilbertKey key, int bits) {
    check_sfc_bits(bits);
    if (bits < 21 && key >= (HilbertKey(1) << (3 * bits))) throw InputError("Hilbert key out of range");
    std::uint32_t X[3] = {0, 0, 0};
    for (int b = bits - 1; b >= 0; --b)
        for (int i = 0; i < 3; ++i) {
            X[i] |= std::uint32_t((key >> (3 * b + (2 - i))) & 1u) << b;
        }
    hilbert_detail::transpose_to_axes(X, bits);
    return {X[0], X[1], X[2]};
}

/// Maps a position (already wrapped on periodic axes) to integer grid coordinates.
/// Positions on the upper box face clamp into the last cell.
inline std::array<std::uint32_t, 3> grid_coords(const Vec3& pos, const SimulationBox& box, int bits) {
    check_sfc_bits(bits);
    std::array<std::uint32_t, 3> g;
    const double cells = double(std::uint64_t(1) << bits);
    for (int d = 0; d < 3; ++d) {
        if (!std::isfinite(pos[d])) throw InputError("grid_coords: non-finite coordinate");
        double f = (pos[d] - box.lo[d]) / box.length(d) * cells;
        if (f < 0) f = 0;
        double c = std::floor(f);
        if (c > cells - 1) c = cells - 1;
        g[d] = std::uint32_t(c);
    }
    return g;
}

/// Hilbert key of a position: wrap on periodic axes, snap to the grid, encode.
inline HilbertKey sfc_key(const Vec3& pos, const SimulationBox& box, int bits) {
    const auto g = grid_coords(box.wrap(pos), box, bits);
    return hilbert_encode(g[0], g[1], g[2], bits);
}

/// Result of ordering a particle set along the space-filling curve.
struct SfcOrder {
    std::vector<HilbertKey> keys;    ///< sorted ascending
    std::vector<std::uint32_t> perm; ///< sorted slot -> original particle index
    int bits = kDefaultSfcBits;

    std::size_t size() const { return keys.size(); }
};

/// Computes Hilbert keys for all particles and the stable sort permutation.
/// Equal keys keep their original relative order.
SfcOrder sort_by_sfc(const ParticleSet& ps, const SimulationBox& box, int bits = kDefaultSfcBits);

/// Gathers all particle arrays into curve order: out[k] = in[order.perm[k]].
ParticleSet apply_sfc_order(const ParticleSet& ps, const SfcOrder& order);

}  // namespace sfcnl
