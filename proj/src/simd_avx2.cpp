#include "sfcnl/simd_builtins.hpp"

#if defined(SFCNL_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <numbers>

// Each lane kernel mirrors the scalar reference path operation for operation
// (no FMA contraction, same evaluation order), so results are bitwise equal to
// the scalar engine; only lane masking differs.

namespace sfcnl::simd {

namespace {

alignas(32) constexpr std::uint64_t kLaneBits[16][4] = {
    {0, 0, 0, 0},       {~0ull, 0, 0, 0},       {0, ~0ull, 0, 0},       {~0ull, ~0ull, 0, 0},
    {0, 0, ~0ull, 0},   {~0ull, 0, ~0ull, 0},   {0, ~0ull, ~0ull, 0},   {~0ull, ~0ull, ~0ull, 0},
    {0, 0, 0, ~0ull},   {~0ull, 0, 0, ~0ull},   {0, ~0ull, 0, ~0ull},   {~0ull, ~0ull, 0, ~0ull},
    {0, 0, ~0ull, ~0ull}, {~0ull, 0, ~0ull, ~0ull}, {0, ~0ull, ~0ull, ~0ull},
    {~0ull, ~0ull, ~0ull, ~0ull}};

inline __m256d lane_mask(unsigned bits) {
    return _mm256_load_pd(reinterpret_cast<const double*>(kLaneBits[bits & 0xfu]));
}

inline __m256d min_image(__m256d d, double len) {
    if (len <= 0) return d;
    const __m256d vl = _mm256_set1_pd(len);
    const __m256d q =
        _mm256_round_pd(_mm256_div_pd(d, vl), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    return _mm256_sub_pd(d, _mm256_mul_pd(q, vl));
}

struct CommonI {
    __m256d xi, yi, zi, hi;
    std::uint64_t i;
};

struct CountLane {
    static constexpr std::size_t kOut = 1;
    static constexpr bool kCheckCoincident = false;
    static constexpr double kSign[1] = {1.0};
    struct IState {};
    IState make_i(const EntryCtx&, std::uint64_t) const { return {}; }
    void eval(const IState&, const CommonI&, __m256d, __m256d, __m256d, __m256d, __m256d, __m256d,
              __m256d* vals) const {
        vals[0] = _mm256_set1_pd(1.0);
    }
};

template <bool Coulomb>
struct LjLane {
    static constexpr std::size_t kOut = 4;
    static constexpr bool kCheckCoincident = true;
    static constexpr double kSign[4] = {-1.0, -1.0, -1.0, 1.0};
    double eps24, eps4, sig2, ck;

    struct IState {
        __m256d kqi;
    };
    IState make_i(const EntryCtx& ctx, std::uint64_t i) const {
        IState s{_mm256_setzero_pd()};
        if constexpr (Coulomb) s.kqi = _mm256_set1_pd(ck * ctx.extra[i]);
        return s;
    }
    void eval(const IState& s, const CommonI&, __m256d dx, __m256d dy, __m256d dz, __m256d d2,
              __m256d, __m256d ej, __m256d* vals) const {
        const __m256d one = _mm256_set1_pd(1.0);
        const __m256d inv2 = _mm256_div_pd(one, d2);
        const __m256d s2 = _mm256_mul_pd(_mm256_set1_pd(sig2), inv2);
        const __m256d s6 = _mm256_mul_pd(_mm256_mul_pd(s2, s2), s2);
        const __m256d two_s6_sq = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), s6), s6);
        __m256d coef = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(eps24), inv2),
                                     _mm256_sub_pd(two_s6_sq, s6));
        __m256d energy = _mm256_mul_pd(_mm256_set1_pd(eps4),
                                       _mm256_sub_pd(_mm256_mul_pd(s6, s6), s6));
        if constexpr (Coulomb) {
            const __m256d qq = _mm256_mul_pd(s.kqi, ej);
            const __m256d inv_r = _mm256_sqrt_pd(inv2);
            energy = _mm256_add_pd(energy, _mm256_mul_pd(qq, inv_r));
            coef = _mm256_add_pd(coef, _mm256_mul_pd(_mm256_mul_pd(qq, inv_r), inv2));
        }
        vals[0] = _mm256_mul_pd(coef, dx);
        vals[1] = _mm256_mul_pd(coef, dy);
        vals[2] = _mm256_mul_pd(coef, dz);
        vals[3] = energy;
    }
};

struct DensityLane {
    static constexpr std::size_t kOut = 1;
    static constexpr bool kCheckCoincident = false;
    static constexpr double kSign[1] = {1.0};

    struct IState {
        __m256d sigma, sigma2, hi;
    };
    IState make_i(const EntryCtx& ctx, std::uint64_t i) const {
        const double h = ctx.h[i];
        const double sigma = 8.0 / (std::numbers::pi_v<double> * h * h * h);
        return {_mm256_set1_pd(sigma), _mm256_set1_pd(sigma * 2.0), _mm256_set1_pd(h)};
    }
    void eval(const IState& s, const CommonI&, __m256d, __m256d, __m256d, __m256d d2, __m256d,
              __m256d ej, __m256d* vals) const {
        const __m256d one = _mm256_set1_pd(1.0);
        const __m256d q = _mm256_div_pd(_mm256_sqrt_pd(d2), s.hi);
        // q <= 1/2: sigma * (1 + 6 q^2 (q - 1))
        const __m256d wa = _mm256_mul_pd(
            s.sigma,
            _mm256_add_pd(one, _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(6.0), q), q),
                                             _mm256_sub_pd(q, one))));
        // 1/2 < q <= 1: sigma * 2 (1 - q)^3
        const __m256d t = _mm256_sub_pd(one, q);
        const __m256d wb = _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(s.sigma2, t), t), t);
        __m256d w = _mm256_blendv_pd(wb, wa, _mm256_cmp_pd(q, _mm256_set1_pd(0.5), _CMP_LE_OQ));
        w = _mm256_and_pd(w, _mm256_cmp_pd(q, one, _CMP_LE_OQ));
        vals[0] = _mm256_mul_pd(ej, w);
    }
};

template <class LK>
void entry_eval(EntryCtx& ctx, const LK& lk) {
    const std::uint32_t ci = ctx.ci;
    const std::uint32_t cj = ctx.cj;
    const std::uint64_t jb = ctx.j_begin;
    const std::uint64_t je = ctx.j_end;
    const __m256d qs = _mm256_set1_pd(ctx.query_scale);
    const __m256d zero = _mm256_setzero_pd();

    for (std::uint32_t b = 0; b < ctx.icl_per_sc; ++b) {
        if (!((ctx.mask >> b) & 1)) continue;
        const std::uint64_t ib = (ctx.icl_base + b) * ci;
        if (ib >= ctx.n) continue;
        const std::uint64_t ie = std::min<std::uint64_t>(ib + ci, ctx.n);

        for (std::uint64_t i = ib; i < ie; ++i) {
            CommonI com{_mm256_set1_pd(ctx.x[i]), _mm256_set1_pd(ctx.y[i]),
                        _mm256_set1_pd(ctx.z[i]), _mm256_set1_pd(ctx.h[i]), i};
            const auto ist = lk.make_i(ctx, i);

            for (std::uint64_t j0 = jb; j0 < je; j0 += 4) {
                const unsigned lanes = unsigned(std::min<std::uint64_t>(4, je - j0));
                const unsigned valid_bits = (1u << lanes) - 1u;
                unsigned allowed_bits = 0;
                for (unsigned l = 0; l < lanes; ++l) {
                    const std::uint64_t j = j0 + l;
                    if (j == i) continue;
                    if (ctx.symmetric && i > j && ci * (j / ci) <= cj * (i / cj)) continue;
                    allowed_bits |= 1u << l;
                }
                if (!allowed_bits) continue;

                const __m256d vmask = lane_mask(valid_bits);
                const __m256i imask = _mm256_castpd_si256(vmask);
                const __m256d xj = _mm256_maskload_pd(ctx.x + j0, imask);
                const __m256d yj = _mm256_maskload_pd(ctx.y + j0, imask);
                const __m256d zj = _mm256_maskload_pd(ctx.z + j0, imask);
                const __m256d hj = _mm256_maskload_pd(ctx.h + j0, imask);
                const __m256d ej =
                    ctx.extra ? _mm256_maskload_pd(ctx.extra + j0, imask) : zero;

                const __m256d dx = min_image(_mm256_sub_pd(com.xi, xj), ctx.box_len[0]);
                const __m256d dy = min_image(_mm256_sub_pd(com.yi, yj), ctx.box_len[1]);
                const __m256d dz = min_image(_mm256_sub_pd(com.zi, zj), ctx.box_len[2]);
                const __m256d d2 = _mm256_add_pd(
                    _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                    _mm256_mul_pd(dz, dz));

                const __m256d rad = _mm256_mul_pd(
                    qs, ctx.symmetric ? _mm256_max_pd(com.hi, hj) : com.hi);
                const __m256d cut = _mm256_cmp_pd(d2, _mm256_mul_pd(rad, rad), _CMP_LE_OQ);
                const __m256d act = _mm256_and_pd(cut, lane_mask(allowed_bits));
                const unsigned act_bits = unsigned(_mm256_movemask_pd(act));
                if (!act_bits) continue;

                if constexpr (LK::kCheckCoincident) {
                    const __m256d co = _mm256_and_pd(_mm256_cmp_pd(d2, zero, _CMP_EQ_OQ), act);
                    if (_mm256_movemask_pd(co)) ctx.error_coincident = true;
                }

                __m256d vals[LK::kOut];
                lk.eval(ist, com, dx, dy, dz, d2, hj, ej, vals);

                // i-side: add active lanes in ascending-j order, as the scalar path does.
                alignas(32) double tmp[LK::kOut][4];
                for (std::size_t o = 0; o < LK::kOut; ++o) _mm256_store_pd(tmp[o], vals[o]);
                for (unsigned l = 0; l < lanes; ++l) {
                    if (!((act_bits >> l) & 1)) continue;
                    for (std::size_t o = 0; o < LK::kOut; ++o)
                        ctx.out_i[o][i] += tmp[o][l];
                }
                ctx.count_i[i] += std::uint32_t(std::popcount(act_bits));

                if (ctx.symmetric && ctx.jacc) {
                    const std::size_t lane_base = std::size_t(j0 - jb);
                    for (std::size_t o = 0; o < LK::kOut; ++o) {
                        __m256d contrib = _mm256_and_pd(vals[o], act);
                        if (LK::kSign[o] < 0)
                            contrib = _mm256_xor_pd(contrib, _mm256_set1_pd(-0.0));
                        double* row = ctx.jacc + o * cj + lane_base;
                        const __m256d cur = _mm256_maskload_pd(row, imask);
                        _mm256_maskstore_pd(row, imask, _mm256_add_pd(cur, contrib));
                    }
                    for (unsigned l = 0; l < lanes; ++l)
                        if ((act_bits >> l) & 1) ++ctx.jcnt[lane_base + l];
                }
            }
        }
    }
}

}  // namespace

void entry_eval_count_avx2(EntryCtx& ctx, const CountKernel<double>&) {
    entry_eval(ctx, CountLane{});
}

void entry_eval_lj_avx2(EntryCtx& ctx, const LjKernel<double, false>& k) {
    entry_eval(ctx, LjLane<false>{24.0 * k.epsilon, 4.0 * k.epsilon, k.sigma * k.sigma, 0.0});
}

void entry_eval_lj_coulomb_avx2(EntryCtx& ctx, const LjKernel<double, true>& k) {
    entry_eval(ctx,
               LjLane<true>{24.0 * k.epsilon, 4.0 * k.epsilon, k.sigma * k.sigma, k.coulomb_k});
}

void entry_eval_density_avx2(EntryCtx& ctx, const SphDensityKernel<double>&) {
    entry_eval(ctx, DensityLane{});
}

}  // namespace sfcnl::simd

#endif  // SFCNL_HAVE_AVX2
