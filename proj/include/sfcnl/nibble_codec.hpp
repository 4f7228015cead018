#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sfcnl/core.hpp"

namespace sfcnl::codec {

/// Valid block widths match the SIMT group sizes the layout is tuned for.
inline constexpr int kBlockWidths[2] = {32, 64};

inline void check_block_width(int w) {
    if (w != 32 && w != 64) throw InputError("block width must be 32 or 64");
}

/// Adjacent differences of a strictly increasing index list. The first output
/// is indices[0] + 1 (difference from a virtual -1), so every difference is >= 1.
std::vector<std::uint64_t> delta_encode(std::span<const std::uint32_t> indices);

/// Logical (unserialized) form of one encoded block of up to w differences.
///
/// bitmask bit k is set iff difference k is not 1. Each set bit owns one info
/// nibble: values 8..15 encode the difference directly as value+6 (range 2..9);
/// values 0..7 give the count-minus-one of data nibbles that follow, which hold
/// the difference in binary, most significant nibble first.
struct EncodedBlock {
    std::uint64_t bitmask = 0;              // bit k <-> element k, LSB first
    std::vector<std::uint8_t> info_nibbles; // one per set bit, element order
    std::vector<std::uint8_t> data_nibbles; // concatenated, MSB nibble first per value
};

/// Encodes up to w differences (each >= 1) into one logical block.
EncodedBlock encode_block(std::span<const std::uint64_t> diffs, int w);

/// Decodes a logical block of `len` differences.
std::vector<std::uint64_t> decode_block(const EncodedBlock& block, std::size_t len);

/// Serialized encoded index list.
///
/// Blocks are laid out back to back, each one byte aligned:
///   w/8 bitmask bytes (element k lives in byte k/8, bit k%8),
///   then info nibbles followed by data nibbles, packed two per byte with the
///   low nibble first, padded with a zero nibble to the byte boundary.
/// The stream is self-delimiting given `count` and w.
struct EncodedList {
    std::uint32_t count = 0;        // number of encoded indices
    std::vector<std::uint8_t> bytes;

    std::size_t byte_len() const { return bytes.size(); }
};

EncodedList encode(std::span<const std::uint32_t> indices, int w);
std::vector<std::uint32_t> decode(const EncodedList& list, int w);

/// Streaming decode of `count` indices from a raw byte range.
/// Returns the number of bytes consumed. Throws DecodeError on truncation.
std::size_t decode_into(const std::uint8_t* data, std::size_t size, std::uint32_t count, int w,
                        std::uint32_t* out);

/// Storage cost in bits of one difference value (mask bit included).
int encoded_size_bits(std::uint64_t v);

/// Reference storage costs of other encodings, for comparison only.
int size_stream_vbyte(std::uint64_t v);
int size_band(std::uint64_t v);

}  // namespace sfcnl::codec
