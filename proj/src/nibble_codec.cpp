#include "sfcnl/nibble_codec.hpp"

#include <bit>

namespace sfcnl::codec {

namespace {

constexpr std::uint64_t kMaxDifference = 0xffffffffull;  // 8 data nibbles

int nibble_count(std::uint64_t v) { return (std::bit_width(v) + 3) / 4; }

struct NibbleWriter {
    std::vector<std::uint8_t>& bytes;
    bool half = false;  // low nibble of the last byte already written

    void push(std::uint8_t nib) {
        if (half) {
            bytes.back() |= std::uint8_t(nib << 4);
            half = false;
        } else {
            bytes.push_back(nib & 0x0f);
            half = true;
        }
    }

    void align() { half = false; }
};

struct NibbleReader {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos;   // byte position
    bool half = false; // next nibble is the high half of byte `pos`

    std::uint8_t take() {
        if (pos >= size) throw DecodeError("truncated nibble stream", pos);
        if (half) {
            half = false;
            return std::uint8_t(data[pos++] >> 4);
        }
        half = true;
        return std::uint8_t(data[pos] & 0x0f);
    }

    void align() {
        if (half) {
            ++pos;
            half = false;
        }
    }
};

}  // namespace

std::vector<std::uint64_t> delta_encode(std::span<const std::uint32_t> indices) {
    std::vector<std::uint64_t> diffs(indices.size());
    std::uint64_t prev = 0;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const std::uint64_t cur = indices[k];
        if (k == 0) {
            diffs[k] = cur + 1;
        } else {
            if (cur <= prev) throw InputError("delta_encode: input not strictly increasing");
            diffs[k] = cur - prev;
        }
        prev = cur;
    }
    return diffs;
}

EncodedBlock encode_block(std::span<const std::uint64_t> diffs, int w) {
    check_block_width(w);
    if (diffs.size() > std::size_t(w)) throw InputError("encode_block: more differences than block width");

    EncodedBlock block;
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        const std::uint64_t v = diffs[k];
        if (v == 0) throw InputError("encode_block: difference of zero");
        if (v > kMaxDifference) throw InputError("encode_block: difference exceeds 2^32 - 1");
        if (v == 1) continue;
        block.bitmask |= std::uint64_t(1) << k;
        if (v <= 9) {
            block.info_nibbles.push_back(std::uint8_t(v + 6));
        } else {
            const int nn = nibble_count(v);
            block.info_nibbles.push_back(std::uint8_t(nn - 1));
            for (int p = nn - 1; p >= 0; --p)
                block.data_nibbles.push_back(std::uint8_t((v >> (4 * p)) & 0x0f));
        }
    }
    return block;
}

std::vector<std::uint64_t> decode_block(const EncodedBlock& block, std::size_t len) {
    std::vector<std::uint64_t> diffs(len, 1);
    std::size_t info_at = 0, data_at = 0;
    for (std::size_t k = 0; k < len; ++k) {
        if (!((block.bitmask >> k) & 1)) continue;
        if (info_at >= block.info_nibbles.size()) throw DecodeError("missing info nibble", 0);
        const std::uint8_t info = block.info_nibbles[info_at++];
        if (info >= 8) {
            diffs[k] = std::uint64_t(info) - 6;
        } else {
            const int nn = info + 1;
            std::uint64_t v = 0;
            for (int p = 0; p < nn; ++p) {
                if (data_at >= block.data_nibbles.size()) throw DecodeError("missing data nibble", 0);
                v = (v << 4) | block.data_nibbles[data_at++];
            }
            diffs[k] = v;
        }
    }
    return diffs;
}

EncodedList encode(std::span<const std::uint32_t> indices, int w) {
    check_block_width(w);
    const auto diffs = delta_encode(indices);

    EncodedList list;
    list.count = std::uint32_t(indices.size());
    for (std::size_t begin = 0; begin < diffs.size(); begin += w) {
        const std::size_t len = std::min<std::size_t>(w, diffs.size() - begin);
        const EncodedBlock block = encode_block({diffs.data() + begin, len}, w);
        for (int byte = 0; byte < w / 8; ++byte)
            list.bytes.push_back(std::uint8_t((block.bitmask >> (8 * byte)) & 0xff));
        NibbleWriter writer{list.bytes};
        for (std::uint8_t nib : block.info_nibbles) writer.push(nib);
        for (std::uint8_t nib : block.data_nibbles) writer.push(nib);
        writer.align();
    }
    return list;
}

std::size_t decode_into(const std::uint8_t* data, std::size_t size, std::uint32_t count, int w,
                        std::uint32_t* out) {
    check_block_width(w);
    NibbleReader reader{data, size, 0};
    std::uint64_t running = 0;
    std::uint32_t produced = 0;

    while (produced < count) {
        const std::uint32_t len = std::min<std::uint32_t>(std::uint32_t(w), count - produced);

        if (reader.pos + std::size_t(w / 8) > size) throw DecodeError("truncated bitmask", reader.pos);
        std::uint64_t bitmask = 0;
        for (int byte = 0; byte < w / 8; ++byte)
            bitmask |= std::uint64_t(data[reader.pos + byte]) << (8 * byte);
        reader.pos += w / 8;

        // Info nibbles for all set bits come before any data nibbles, so the
        // per-element differences need two sweeps over the mask.
        const std::uint64_t used = (len == 64) ? bitmask : (bitmask & ((std::uint64_t(1) << len) - 1));
        const int set = std::popcount(used);
        std::uint8_t info[64];
        for (int s = 0; s < set; ++s) info[s] = reader.take();

        int info_at = 0;
        for (std::uint32_t k = 0; k < len; ++k) {
            std::uint64_t diff = 1;
            if ((used >> k) & 1) {
                const std::uint8_t nib = info[info_at++];
                if (nib >= 8) {
                    diff = std::uint64_t(nib) - 6;
                } else {
                    diff = 0;
                    for (int p = 0; p <= nib; ++p) diff = (diff << 4) | reader.take();
                }
            }
            running += diff;
            out[produced + k] = std::uint32_t(running - 1);
        }
        produced += len;
        reader.align();
    }
    return reader.pos;
}

std::vector<std::uint32_t> decode(const EncodedList& list, int w) {
    std::vector<std::uint32_t> out(list.count);
    const std::size_t consumed = decode_into(list.bytes.data(), list.bytes.size(), list.count, w, out.data());
    if (consumed != list.bytes.size())
        throw DecodeError("trailing bytes after encoded list", consumed);
    return out;
}

int encoded_size_bits(std::uint64_t v) {
    if (v == 0) throw InputError("encoded_size_bits: zero difference");
    if (v > kMaxDifference) throw InputError("encoded_size_bits: difference exceeds 2^32 - 1");
    if (v == 1) return 1;
    if (v <= 9) return 5;
    return 5 + 4 * nibble_count(v);
}

int size_stream_vbyte(std::uint64_t v) {
    if (v >= (std::uint64_t(1) << 32)) throw InputError("size_stream_vbyte: value exceeds 32 bits");
    if (v < (1u << 8)) return 10;
    if (v < (1u << 16)) return 18;
    if (v < (1u << 24)) return 26;
    return 34;
}

int size_band(std::uint64_t v) {
    if (v == 0 || v > (std::uint64_t(1) << 32)) throw InputError("size_band: value out of range [1, 2^32]");
    if (v <= 2) return 2;
    if (v <= (1u << 8)) return 10;
    return 34;
}

}  // namespace sfcnl::codec
