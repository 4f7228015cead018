#pragma once

#include "sfcnl/builtin_kernels.hpp"
#include "sfcnl/simd.hpp"

// AVX2 variants of the built-in cluster-pair kernels. SFCNL_HAVE_AVX2 is a
// public compile definition of the library target so every translation unit
// sees the same EntryEval specializations.
#if defined(SFCNL_HAVE_AVX2)

namespace sfcnl::simd {

void entry_eval_count_avx2(EntryCtx& ctx, const CountKernel<double>& k);
void entry_eval_lj_avx2(EntryCtx& ctx, const LjKernel<double, false>& k);
void entry_eval_lj_coulomb_avx2(EntryCtx& ctx, const LjKernel<double, true>& k);
void entry_eval_density_avx2(EntryCtx& ctx, const SphDensityKernel<double>& k);

template <>
struct EntryEval<CountKernel<double>> {
    static constexpr bool available = true;
    static void run(EntryCtx& ctx, const CountKernel<double>& k) { entry_eval_count_avx2(ctx, k); }
};

template <>
struct EntryEval<LjKernel<double, false>> {
    static constexpr bool available = true;
    static void run(EntryCtx& ctx, const LjKernel<double, false>& k) { entry_eval_lj_avx2(ctx, k); }
};

template <>
struct EntryEval<LjKernel<double, true>> {
    static constexpr bool available = true;
    static void run(EntryCtx& ctx, const LjKernel<double, true>& k) {
        entry_eval_lj_coulomb_avx2(ctx, k);
    }
};

template <>
struct EntryEval<SphDensityKernel<double>> {
    static constexpr bool available = true;
    static void run(EntryCtx& ctx, const SphDensityKernel<double>& k) {
        entry_eval_density_avx2(ctx, k);
    }
};

}  // namespace sfcnl::simd

#endif  // SFCNL_HAVE_AVX2
