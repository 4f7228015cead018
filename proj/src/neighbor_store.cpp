#include "sfcnl/neighbor_store.hpp"

#include <cstring>
#include <fstream>

#include "sfcnl/nibble_codec.hpp"

namespace sfcnl {

std::uint64_t entry_mask(const std::uint8_t* mask_records, std::uint32_t entry,
                         std::uint32_t mask_bytes) {
    std::uint64_t mask = 0;
    const std::uint8_t* rec = mask_records + std::size_t(entry) * mask_bytes;
    for (std::uint32_t b = 0; b < mask_bytes; ++b) mask |= std::uint64_t(rec[b]) << (8 * b);
    return mask;
}

const std::uint8_t* decode_entry_indices(const NeighborStore& store, std::uint64_t sc,
                                         std::uint32_t* out) {
    if (sc >= store.num_superclusters()) throw InputError("decode_entry_indices: super-cluster out of range");
    const std::uint32_t count = store.counts[sc];
    const std::uint64_t begin = store.offsets[sc];
    const std::uint64_t end = store.offsets[sc + 1];
    const std::uint64_t mask_bytes = std::uint64_t(count) * store.build.params.mask_bytes_per_entry();
    if (begin + mask_bytes > end) throw DecodeError("blob slice too short for bitmasks", std::size_t(begin));

    const std::uint8_t* records = store.blob.data() + begin;
    const std::uint8_t* index_data = records + mask_bytes;
    const std::uint64_t index_len = end - begin - mask_bytes;

    if (store.build.compress) {
        const std::size_t consumed =
            codec::decode_into(index_data, std::size_t(index_len), count, store.build.params.w, out);
        if (consumed != index_len) throw DecodeError("trailing bytes in index blob", consumed);
    } else {
        if (index_len != std::uint64_t(count) * 4)
            throw DecodeError("raw index blob length mismatch", std::size_t(index_len));
        for (std::uint32_t k = 0; k < count; ++k)
            std::memcpy(&out[k], index_data + std::size_t(k) * 4, 4);
    }
    return records;
}

std::vector<NeighborEntry> neighbor_clusters(const NeighborStore& store, std::uint64_t sc) {
    const std::uint32_t count = store.counts.at(sc);
    std::vector<std::uint32_t> indices(count);
    const std::uint8_t* records = decode_entry_indices(store, sc, indices.data());

    const std::uint32_t mask_bytes = store.build.params.mask_bytes_per_entry();
    std::vector<NeighborEntry> entries(count);
    for (std::uint32_t e = 0; e < count; ++e)
        entries[e] = {indices[e], entry_mask(records, e, mask_bytes)};
    return entries;
}

MemoryFootprint memory_footprint(const NeighborStore& store) {
    MemoryFootprint fp;
    fp.total_bytes = store.total_bytes();
    fp.bytes_per_particle = store.n ? double(fp.total_bytes) / double(store.n) : 0.0;
    return fp;
}

namespace {

constexpr char kMagic[8] = {'S', 'F', 'N', 'L', 'S', 'T', 'O', 'R'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw DecodeError("store file truncated", std::size_t(in.tellg()));
    return v;
}

}  // namespace

void write_store(const NeighborStore& store, std::ostream& out) {
    out.write(kMagic, sizeof(kMagic));
    put(out, kVersion);
    put(out, std::uint8_t(store.build.mode));
    put(out, std::uint8_t(store.build.compress ? 1 : 0));
    put(out, std::uint16_t(0));
    put(out, store.build.params.ci);
    put(out, store.build.params.cj);
    put(out, store.build.params.sc_size);
    put(out, std::uint32_t(store.build.params.w));
    put(out, store.build.build_radius_scale);
    put(out, store.n);
    put(out, std::uint64_t(store.counts.size()));
    put(out, std::uint64_t(store.blob.size()));
    out.write(reinterpret_cast<const char*>(store.counts.data()),
              std::streamsize(store.counts.size() * sizeof(std::uint32_t)));
    out.write(reinterpret_cast<const char*>(store.offsets.data()),
              std::streamsize(store.offsets.size() * sizeof(std::uint64_t)));
    out.write(reinterpret_cast<const char*>(store.blob.data()), std::streamsize(store.blob.size()));
    if (!out) throw std::runtime_error("write_store: stream failure");
}

void write_store(const NeighborStore& store, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_store: cannot open " + path);
    write_store(store, out);
}

NeighborStore read_store(std::istream& in) {
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw DecodeError("bad store magic", 0);
    const auto version = get<std::uint32_t>(in);
    if (version != kVersion) throw DecodeError("unsupported store version", 8);

    NeighborStore store;
    const auto mode = get<std::uint8_t>(in);
    const auto compressed = get<std::uint8_t>(in);
    get<std::uint16_t>(in);  // reserved
    const auto ci = get<std::uint32_t>(in);
    const auto cj = get<std::uint32_t>(in);
    const auto sc_size = get<std::uint32_t>(in);
    const auto w = get<std::uint32_t>(in);
    if (sc_size != kSuperClusterSize) throw DecodeError("unsupported super-cluster size", 0);
    const auto scale = get<double>(in);
    store.build = BuildParams(ClusterParams(ci, cj, int(w)),
                              mode == 0 ? ListMode::gather : ListMode::symmetric, compressed != 0,
                              scale);
    store.n = get<std::uint64_t>(in);
    const auto num_sc = get<std::uint64_t>(in);
    const auto blob_size = get<std::uint64_t>(in);

    store.counts.resize(num_sc);
    store.offsets.resize(num_sc + 1);
    store.blob.resize(blob_size);
    in.read(reinterpret_cast<char*>(store.counts.data()),
            std::streamsize(num_sc * sizeof(std::uint32_t)));
    in.read(reinterpret_cast<char*>(store.offsets.data()),
            std::streamsize((num_sc + 1) * sizeof(std::uint64_t)));
    in.read(reinterpret_cast<char*>(store.blob.data()), std::streamsize(blob_size));
    if (!in) throw DecodeError("store file truncated", std::size_t(in.tellg()));
    return store;
}

NeighborStore read_store(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_store: cannot open " + path);
    return read_store(in);
}

}  // namespace sfcnl
