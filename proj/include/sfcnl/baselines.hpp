#pragma once

#include <cstdint>

#include "sfcnl/core.hpp"
#include "sfcnl/neighbor_store.hpp"
#include "sfcnl/pair_kernel.hpp"

namespace sfcnl {

inline constexpr std::size_t kDefaultOracleCap = 50000;

/// Exact directed neighbor pairs by O(n^2) scan; distances are minimized over
/// all periodic images explicitly, independent of the minimum-image helpers.
/// Gather mode: d <= scale * h_i. Symmetric mode: d <= scale * max(h_i, h_j).
std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_force_pairs(
    const ParticleSet& ps, const SimulationBox& box, double scale, ListMode mode,
    std::size_t cap = kDefaultOracleCap);

/// Per-particle exact neighbor counts (directed), same criterion as above.
std::vector<std::uint32_t> brute_force_counts(const ParticleSet& ps, const SimulationBox& box,
                                              double scale, ListMode mode,
                                              std::size_t cap = kDefaultOracleCap);

enum class FullListMethod { automatic, brute_force, cell_grid };

/// Classic per-particle Verlet list in CSR form, neighbors ascending.
struct FullVerletList {
    ListMode mode = ListMode::gather;
    double build_scale = 1.0;
    std::vector<std::uint64_t> offsets;   ///< size n + 1
    std::vector<std::uint32_t> neighbors;

    std::uint64_t memory_bytes() const {
        return offsets.size() * sizeof(std::uint64_t) + neighbors.size() * sizeof(std::uint32_t);
    }
};

/// Builds the full list from the brute-force pair set below `cap` particles
/// and from a uniform cell grid above it (or as forced by `method`).
FullVerletList build_full_list(const ParticleSet& ps, const SimulationBox& box, double build_scale,
                               ListMode mode, FullListMethod method = FullListMethod::automatic,
                               std::size_t cap = kDefaultOracleCap);

/// Same reduction contract as reduce(): exact query-cutoff filtering, ascending
/// j evaluation, postamble with the exact neighbor count.
template <class Real = double, class K>
ReduceResult<Real> reduce_full(const ParticleSet& ps, const SimulationBox& box,
                               const FullVerletList& list, const K& kernel,
                               const PassConfig& cfg = {}) {
    constexpr std::size_t NIn = K::num_inputs;
    constexpr std::size_t NOut = K::num_outputs;
    const std::size_t n = ps.size();
    if (list.offsets.size() != n + 1) throw InputError("reduce_full: list/particle-set mismatch");
    if (cfg.query_scale > list.build_scale)
        throw InputError("reduce_full: query_scale exceeds the list's build scale");

    std::array<const double*, NIn> in_ptr{};
    for (std::size_t k = 0; k < NIn; ++k) in_ptr[k] = ps.field(kernel.inputs[k]).data();

    ReduceResult<Real> res;
    std::array<Reduction, NOut> red{};
    for (std::size_t o = 0; o < NOut; ++o) {
        red[o] = kernel.outputs[o].reduction;
        res.names.emplace_back(kernel.outputs[o].name);
        res.outputs.emplace_back(n, reduction_identity<Real>(red[o]));
    }
    res.neighbor_count.assign(n, 0);

    Real box_len[3];
    for (int d = 0; d < 3; ++d) box_len[d] = box.periodic[d] ? Real(box.length(d)) : Real(0);
    const Real qs = Real(cfg.query_scale);
    const bool symmetric = list.mode == ListMode::symmetric;

    auto wrap1 = [](Real d, Real len) {
        if (len > Real(0)) d -= len * std::rint(d / len);
        return d;
    };

    for (std::size_t i = 0; i < n; ++i) {
        PairArgs<Real> args;
        args.i = i;
        args.pos_i = {Real(ps.x[i]), Real(ps.y[i]), Real(ps.z[i])};
        args.h_i = Real(ps.h[i]);
        std::array<Real, NIn> in_i{};
        for (std::size_t k = 0; k < NIn; ++k) in_i[k] = Real(in_ptr[k][i]);

        for (std::uint64_t e = list.offsets[i]; e < list.offsets[i + 1]; ++e) {
            const std::uint32_t j = list.neighbors[e];
            args.pos_j = {Real(ps.x[j]), Real(ps.y[j]), Real(ps.z[j])};
            args.dx = {wrap1(Real(args.pos_i.x - args.pos_j.x), box_len[0]),
                       wrap1(Real(args.pos_i.y - args.pos_j.y), box_len[1]),
                       wrap1(Real(args.pos_i.z - args.pos_j.z), box_len[2])};
            args.d2 = args.dx.x * args.dx.x + args.dx.y * args.dx.y + args.dx.z * args.dx.z;
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
        }
    }

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

/// Direct brute-force evaluation of the kernel contract, for oracle use.
template <class Real = double, class K>
ReduceResult<Real> reduce_direct(const ParticleSet& ps, const SimulationBox& box, const K& kernel,
                                 double query_scale, ListMode mode,
                                 std::size_t cap = kDefaultOracleCap) {
    FullVerletList list =
        build_full_list(ps, box, query_scale, mode, FullListMethod::brute_force, cap);
    PassConfig cfg;
    cfg.query_scale = query_scale;
    return reduce_full<Real>(ps, box, list, kernel, cfg);
}

}  // namespace sfcnl
