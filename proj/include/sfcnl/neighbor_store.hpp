#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "sfcnl/cluster.hpp"
#include "sfcnl/core.hpp"

namespace sfcnl {

enum class ListMode : std::uint8_t {
    gather,    ///< per-target lists, radius criterion h_i
    symmetric  ///< half lists, radius criterion max(h_i, h_j)
};

/// Neighbor-list build configuration.
struct BuildParams {
    ClusterParams params;
    ListMode mode = ListMode::gather;
    bool compress = true;
    double build_radius_scale = 1.0;  ///< Verlet-skin factor >= 1 applied to h

    BuildParams() = default;
    BuildParams(ClusterParams p, ListMode m, bool c, double scale = 1.0)
        : params(p), mode(m), compress(c), build_radius_scale(scale) {
        if (!(build_radius_scale >= 1.0)) throw InputError("BuildParams: build_radius_scale must be >= 1");
    }
};

/// One decoded neighbor entry: a j-cluster index and the interaction bits of
/// the super-cluster's i-clusters (bit b <-> i-cluster b).
struct NeighborEntry {
    std::uint32_t jcluster = 0;
    std::uint64_t mask = 0;
};

/// Per-super-cluster neighbor data.
///
/// Each super-cluster owns a blob slice [offsets[s], offsets[s+1]) holding
/// counts[s] interaction bitmask records (mask_bytes_per_entry bytes each,
/// little-endian bit order) followed by the ascending j-cluster index list,
/// either raw little-endian uint32 or nibble-codec compressed.
struct NeighborStore {
    BuildParams build;
    std::uint64_t n = 0;
    std::vector<std::uint32_t> counts;    ///< per super-cluster neighbor count
    std::vector<std::uint64_t> offsets;   ///< size num_superclusters + 1
    std::vector<std::uint8_t> blob;

    std::uint64_t num_superclusters() const { return counts.size(); }

    /// Bytes of the per-super-cluster header arrays.
    std::uint64_t header_bytes() const {
        return counts.size() * sizeof(std::uint32_t) + offsets.size() * sizeof(std::uint64_t);
    }

    std::uint64_t total_bytes() const { return header_bytes() + blob.size(); }
};

/// Decodes the neighbor entries of one super-cluster, ascending by j-cluster.
std::vector<NeighborEntry> neighbor_clusters(const NeighborStore& store, std::uint64_t sc);

/// Decodes only the j-cluster index list of one super-cluster into `out`
/// (capacity counts[sc]) and returns a pointer to the entry's mask records.
const std::uint8_t* decode_entry_indices(const NeighborStore& store, std::uint64_t sc,
                                         std::uint32_t* out);

std::uint64_t entry_mask(const std::uint8_t* mask_records, std::uint32_t entry,
                         std::uint32_t mask_bytes);

struct MemoryFootprint {
    std::uint64_t total_bytes = 0;
    double bytes_per_particle = 0;
};

MemoryFootprint memory_footprint(const NeighborStore& store);

/// Binary dump (little-endian): magic "SFNLSTOR", u32 version, u8 mode,
/// u8 compressed, u16 reserved, u32 ci, u32 cj, u32 sc_size, u32 w,
/// f64 build_radius_scale, u64 n, u64 num_superclusters, u64 blob_size,
/// then counts[], offsets[], blob.
void write_store(const NeighborStore& store, std::ostream& out);
void write_store(const NeighborStore& store, const std::string& path);
NeighborStore read_store(std::istream& in);
NeighborStore read_store(const std::string& path);

}  // namespace sfcnl
