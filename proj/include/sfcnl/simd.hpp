#pragma once

#include <cstdint>

#include "sfcnl/core.hpp"

namespace sfcnl {

/// Instruction-set selection for the built-in cluster-pair kernels.
/// `automatic` picks the widest variant the CPU supports at run time.
enum class Isa : std::uint8_t { automatic, scalar, avx2 };

bool cpu_supports_avx2();

/// True when the AVX2 translation unit was compiled in.
bool compiled_with_avx2();

/// Resolves `automatic` against the running CPU; throws InputError when an
/// explicitly requested ISA is unavailable.
Isa resolve_isa(Isa requested);

const char* isa_name(Isa isa);

namespace simd {

/// Per-entry evaluation context handed to vector kernels: one super-cluster's
/// stored neighbor entry (j-cluster plus interaction mask) in double precision.
struct EntryCtx {
    const double* x = nullptr;
    const double* y = nullptr;
    const double* z = nullptr;
    const double* h = nullptr;
    const double* extra = nullptr;  ///< optional bound input field (mass, charge)
    double box_len[3] = {0, 0, 0};  ///< <= 0 marks an open axis
    std::uint64_t mask = 0;
    std::uint64_t icl_base = 0;     ///< global index of the super-cluster's first i-cluster
    std::uint32_t ci = 8, cj = 8, icl_per_sc = 8;
    std::uint64_t n = 0;
    std::uint64_t j_begin = 0, j_end = 0;
    double query_scale = 1.0;
    bool symmetric = false;         ///< half-list dedup + j-side accumulation
    double* const* out_i = nullptr; ///< dense output arrays, one per kernel output
    std::uint32_t* count_i = nullptr;
    double* jacc = nullptr;         ///< [output][cj] accumulator for this entry
    std::uint32_t* jcnt = nullptr;  ///< [cj]
    bool error_coincident = false;
};

/// Vector twin of the scalar reference path; specialized per built-in kernel.
template <class K>
struct EntryEval {
    static constexpr bool available = false;
    static void run(EntryCtx&, const K&) {}
};

}  // namespace simd
}  // namespace sfcnl
