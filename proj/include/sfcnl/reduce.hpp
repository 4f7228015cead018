#pragma once

#include <type_traits>

#include "sfcnl/builtin_kernels.hpp"
#include "sfcnl/cluster.hpp"
#include "sfcnl/neighbor_store.hpp"
#include "sfcnl/pair_kernel.hpp"
#include "sfcnl/parallel.hpp"
#include "sfcnl/simd_builtins.hpp"

namespace sfcnl {

namespace detail {

// Half-list dedup: the mirrored slot (icluster(j), jcluster(i)) is also stored
// when icluster(j) starts no later than jcluster(i); in that case only the
// i < j orientation evaluates the pair.
inline bool mirror_stored(std::uint64_t i, std::uint64_t j, std::uint32_t ci, std::uint32_t cj) {
    return ci * (j / ci) <= cj * (i / cj);
}

template <class Real>
Real min_image(Real d, Real len) {
    if (len > Real(0)) d -= len * std::rint(d / len);
    return d;
}

}  // namespace detail

/// Evaluates the pair kernel over the neighbor store.
///
/// For every particle i the outputs reduce kernel contributions over the exact
/// neighborhood N(i) = { j != i : d_ij <= query_scale * r(i,j) } with r = h_i in
/// gather mode and max(h_i, h_j) in symmetric mode. Symmetric stores hold each
/// unordered pair once; the j side receives even outputs unchanged and odd
/// outputs negated. Results are bitwise reproducible for any thread count.
template <class Real = double, class K>
ReduceResult<Real> reduce(const ParticleSet& ps, const SimulationBox& box,
                          const NeighborStore& store, const K& kernel,
                          const PassConfig& cfg = {}) {
    constexpr std::size_t NIn = K::num_inputs;
    constexpr std::size_t NOut = K::num_outputs;

    const std::size_t n = ps.size();
    if (store.n != n) throw InputError("reduce: store/particle-set size mismatch");
    if (cfg.query_scale > store.build.build_radius_scale)
        throw InputError("reduce: query_scale exceeds the store's build radius scale");

    std::array<const double*, NIn> in_ptr{};
    for (std::size_t k = 0; k < NIn; ++k) in_ptr[k] = ps.field(kernel.inputs[k]).data();

    std::array<Reduction, NOut> red{};
    std::array<Symmetry, NOut> sym{};
    std::array<Real, NOut> identity{};
    ReduceResult<Real> res;
    for (std::size_t o = 0; o < NOut; ++o) {
        red[o] = kernel.outputs[o].reduction;
        sym[o] = kernel.outputs[o].symmetry;
        identity[o] = reduction_identity<Real>(red[o]);
        res.names.emplace_back(kernel.outputs[o].name);
        res.outputs.emplace_back(n, identity[o]);
    }
    res.neighbor_count.assign(n, 0);
    if (n == 0) return res;

    const ClusterParams& cp = store.build.params;
    const ClusterIndexing idx(n, cp);
    const std::uint64_t num_sc = idx.num_superclusters();
    const std::uint64_t num_icl = idx.num_iclusters();
    const std::uint32_t ci = cp.ci;
    const std::uint32_t cj = cp.cj;
    const std::uint32_t icl_per_sc = cp.iclusters_per_sc();
    const std::uint32_t mask_bytes = cp.mask_bytes_per_entry();
    const bool symmetric = store.build.mode == ListMode::symmetric;
    const Real qs = Real(cfg.query_scale);

    Real box_len[3];
    for (int d = 0; d < 3; ++d) box_len[d] = box.periodic[d] ? Real(box.length(d)) : Real(0);

    const Isa resolved = resolve_isa(cfg.isa);
    constexpr bool kernel_has_simd =
        std::is_same_v<Real, double> && simd::EntryEval<K>::available;
    const bool use_simd = kernel_has_simd && resolved == Isa::avx2;

    std::array<double*, NOut> out_raw{};
    if constexpr (std::is_same_v<Real, double>)
        for (std::size_t o = 0; o < NOut; ++o) out_raw[o] = res.outputs[o].data();

    struct ScJSide {
        std::vector<std::uint32_t> jclusters;
        std::vector<Real> acc;           // [entry][output][lane]
        std::vector<std::uint32_t> cnt;  // [entry][lane]
    };

    auto compute = [&](std::uint64_t sc) -> ScJSide {
        ScJSide side;
        const std::uint32_t count = store.counts[sc];
        if (count == 0) return side;
        side.jclusters.resize(count);
        const std::uint8_t* records = decode_entry_indices(store, sc, side.jclusters.data());
        if (symmetric) {
            side.acc.resize(std::size_t(count) * NOut * cj);
            for (std::uint32_t e = 0; e < count; ++e)
                for (std::size_t o = 0; o < NOut; ++o)
                    for (std::uint32_t l = 0; l < cj; ++l)
                        side.acc[(std::size_t(e) * NOut + o) * cj + l] = identity[o];
            side.cnt.assign(std::size_t(count) * cj, 0);
        }

        const std::uint64_t icl_base = std::uint64_t(sc) * icl_per_sc;
        for (std::uint32_t e = 0; e < count; ++e) {
            const std::uint32_t jcl = side.jclusters[e];
            const std::uint64_t mask = entry_mask(records, e, mask_bytes);
            const std::uint64_t jb = std::uint64_t(jcl) * cj;
            const std::uint64_t je = std::min<std::uint64_t>(jb + cj, n);
            Real* acc = symmetric ? side.acc.data() + std::size_t(e) * NOut * cj : nullptr;
            std::uint32_t* jc = symmetric ? side.cnt.data() + std::size_t(e) * cj : nullptr;

            if constexpr (kernel_has_simd) {
                if (use_simd) {
                    simd::EntryCtx ctx;
                    ctx.x = ps.x.data();
                    ctx.y = ps.y.data();
                    ctx.z = ps.z.data();
                    ctx.h = ps.h.data();
                    ctx.extra = NIn > 0 ? in_ptr[0] : nullptr;
                    for (int d = 0; d < 3; ++d) ctx.box_len[d] = double(box_len[d]);
                    ctx.mask = mask;
                    ctx.icl_base = icl_base;
                    ctx.ci = ci;
                    ctx.cj = cj;
                    ctx.icl_per_sc = icl_per_sc;
                    ctx.n = n;
                    ctx.j_begin = jb;
                    ctx.j_end = je;
                    ctx.query_scale = cfg.query_scale;
                    ctx.symmetric = symmetric;
                    if constexpr (std::is_same_v<Real, double>) {
                        ctx.out_i = out_raw.data();
                        ctx.jacc = acc;
                    }
                    ctx.count_i = res.neighbor_count.data();
                    ctx.jcnt = jc;
                    simd::EntryEval<K>::run(ctx, kernel);
                    if (ctx.error_coincident) throw InputError("reduce: coincident particles");
                    continue;
                }
            }

            // Scalar reference path.
            for (std::uint32_t b = 0; b < icl_per_sc; ++b) {
                if (!((mask >> b) & 1)) continue;
                const std::uint64_t gi = icl_base + b;
                if (gi >= num_icl) continue;
                const std::uint64_t ib = gi * ci;
                const std::uint64_t ie = std::min<std::uint64_t>(ib + ci, n);
                for (std::uint64_t i = ib; i < ie; ++i) {
                    PairArgs<Real> args;
                    args.i = i;
                    args.pos_i = {Real(ps.x[i]), Real(ps.y[i]), Real(ps.z[i])};
                    args.h_i = Real(ps.h[i]);
                    std::array<Real, NIn> in_i{};
                    for (std::size_t k = 0; k < NIn; ++k) in_i[k] = Real(in_ptr[k][i]);

                    for (std::uint64_t j = jb; j < je; ++j) {
                        if (i == j) continue;
                        if (symmetric && i > j && detail::mirror_stored(i, j, ci, cj)) continue;
                        args.pos_j = {Real(ps.x[j]), Real(ps.y[j]), Real(ps.z[j])};
                        args.dx = {detail::min_image(Real(args.pos_i.x - args.pos_j.x), box_len[0]),
                                   detail::min_image(Real(args.pos_i.y - args.pos_j.y), box_len[1]),
                                   detail::min_image(Real(args.pos_i.z - args.pos_j.z), box_len[2])};
                        args.d2 = args.dx.x * args.dx.x + args.dx.y * args.dx.y +
                                  args.dx.z * args.dx.z;
                        args.h_j = Real(ps.h[j]);
                        const Real r = qs * (symmetric ? std::max(args.h_i, args.h_j) : args.h_i);
                        if (args.d2 > r * r) continue;
                        args.j = j;
                        std::array<Real, NIn> in_j{};
                        for (std::size_t k = 0; k < NIn; ++k) in_j[k] = Real(in_ptr[k][j]);

                        const std::array<Real, NOut> vals = kernel.pair(args, in_i, in_j);
                        for (std::size_t o = 0; o < NOut; ++o)
                            res.outputs[o][i] = reduce_op(red[o], res.outputs[o][i], vals[o]);
                        ++res.neighbor_count[i];
                        if (symmetric) {
                            const std::uint32_t lane = std::uint32_t(j - jb);
                            for (std::size_t o = 0; o < NOut; ++o) {
                                if (sym[o] == Symmetry::none) continue;
                                const Real sv = sym[o] == Symmetry::odd ? -vals[o] : vals[o];
                                acc[o * cj + lane] = reduce_op(red[o], acc[o * cj + lane], sv);
                            }
                            ++jc[lane];
                        }
                    }
                }
            }
        }
        return side;
    };

    auto commit = [&](std::uint64_t, ScJSide side) {
        if (side.acc.empty()) return;
        for (std::size_t e = 0; e < side.jclusters.size(); ++e) {
            const std::uint64_t jb = std::uint64_t(side.jclusters[e]) * cj;
            const std::uint64_t je = std::min<std::uint64_t>(jb + cj, n);
            for (std::uint64_t j = jb; j < je; ++j) {
                const std::uint32_t lane = std::uint32_t(j - jb);
                for (std::size_t o = 0; o < NOut; ++o)
                    res.outputs[o][j] = reduce_op(red[o], res.outputs[o][j],
                                                  side.acc[(e * NOut + o) * cj + lane]);
                res.neighbor_count[j] += side.cnt[e * cj + lane];
            }
        }
    };

    if (symmetric)
        parallel_ordered(num_sc, cfg.threads, compute, commit);
    else
        parallel_for(num_sc, cfg.threads, [&](std::uint64_t sc) { compute(sc); });

    if constexpr (K::has_postamble) {
        for (std::size_t i = 0; i < n; ++i) {
            std::array<Real, NOut> vals;
            for (std::size_t o = 0; o < NOut; ++o) vals[o] = res.outputs[o][i];
            kernel.postamble(i, vals, res.neighbor_count[i]);
            for (std::size_t o = 0; o < NOut; ++o) res.outputs[o][i] = vals[o];
        }
    }
    return res;
}

}  // namespace sfcnl
