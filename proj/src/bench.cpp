#include "sfcnl/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sfcnl/baselines.hpp"
#include "sfcnl/builtin_kernels.hpp"
#include "sfcnl/neighbor_build.hpp"
#include "sfcnl/octree.hpp"
#include "sfcnl/reduce.hpp"

namespace sfcnl::bench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t hash) {
    const auto* bytes = static_cast<const std::uint8_t*>(data);
    for (std::size_t k = 0; k < size; ++k) {
        hash ^= bytes[k];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

template <class Real>
std::string hash_result(const ReduceResult<Real>& res) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const auto& out : res.outputs) hash = fnv1a(out.data(), out.size() * sizeof(Real), hash);
    hash = fnv1a(res.neighbor_count.data(), res.neighbor_count.size() * sizeof(std::uint32_t), hash);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

struct PassStats {
    double mean_neighbors = 0;
    std::uint64_t total_neighbors = 0;
    std::string hash;
};

template <class Real>
PassStats run_pass(const ParticleSet& ps, const SimulationBox& box, const NeighborStore& store,
                   const BenchConfig& cfg, std::vector<double>& times) {
    const PassConfig pass_cfg(1.0, cfg.isa, cfg.threads);
    auto run = [&](const auto& kernel) {
        times.clear();
        ReduceResult<Real> res;
        for (int rep = 0; rep <= cfg.repeats; ++rep) {  // first iteration is warm-up
            const auto t0 = Clock::now();
            res = reduce<Real>(ps, box, store, kernel, pass_cfg);
            if (rep > 0) times.push_back(ms_since(t0));
        }
        PassStats stats;
        for (const auto c : res.neighbor_count) stats.total_neighbors += c;
        stats.mean_neighbors = ps.size() ? double(stats.total_neighbors) / double(ps.size()) : 0.0;
        stats.hash = hash_result(res);
        return stats;
    };

    switch (cfg.kernel) {
        case KernelChoice::count: return run(CountKernel<Real>{});
        case KernelChoice::density: return run(SphDensityKernel<Real>{});
        case KernelChoice::lj: {
            double sigma = cfg.lj_sigma;
            if (sigma <= 0) sigma = 0.5 * std::cbrt(1.0 / cfg.density);
            if (cfg.coulomb_k != 0)
                return run(lj_coulomb_kernel<Real>(Real(cfg.lj_epsilon), Real(sigma),
                                                   Real(cfg.coulomb_k)));
            return run(lj_kernel<Real>(Real(cfg.lj_epsilon), Real(sigma)));
        }
    }
    throw InputError("run_bench: unknown kernel");
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

double cluster_overhead(const NeighborStore& store, std::uint64_t true_directed_pairs) {
    if (store.build.mode != ListMode::gather)
        throw InputError("cluster_overhead: requires a gather-mode store");
    if (true_directed_pairs == 0) throw InputError("cluster_overhead: no in-range pairs");

    const ClusterParams& cp = store.build.params;
    const ClusterIndexing idx(store.n, cp);
    const std::uint64_t num_icl = idx.num_iclusters();
    std::uint64_t slots = 0;
    std::vector<std::uint32_t> indices;
    for (std::uint64_t sc = 0; sc < store.num_superclusters(); ++sc) {
        const std::uint32_t count = store.counts[sc];
        if (!count) continue;
        indices.resize(count);
        const std::uint8_t* records = decode_entry_indices(store, sc, indices.data());
        for (std::uint32_t e = 0; e < count; ++e) {
            const auto [jb, je] = idx.range(ClusterKind::j, indices[e]);
            const std::uint64_t cj_eff = je - jb;
            const std::uint64_t mask = entry_mask(records, e, cp.mask_bytes_per_entry());
            for (std::uint32_t b = 0; b < cp.iclusters_per_sc(); ++b) {
                if (!((mask >> b) & 1)) continue;
                const std::uint64_t gi = sc * cp.iclusters_per_sc() + b;
                if (gi >= num_icl) continue;
                const auto [ib, ie] = idx.range(ClusterKind::i, gi);
                slots += (ie - ib) * cj_eff;
            }
        }
    }
    return double(slots) / double(true_directed_pairs);
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
    std::vector<BenchRow> rows;
    for (const double target : cfg.target_neighbors) {
        SimulationBox box({0, 0, 0}, {1, 1, 1});
        ParticleSet ps;
        if (cfg.distribution == Distribution::uniform) {
            UniformSpec spec;
            spec.n = cfg.n;
            spec.density = cfg.density;
            spec.target_neighbors = target;
            spec.periodic = cfg.periodic;
            spec.seed = cfg.seed;
            ps = make_uniform(spec, box);
        } else {
            EvrardSpec spec;
            spec.n = cfg.n;
            spec.target_neighbors = target;
            spec.periodic = cfg.periodic;
            spec.seed = cfg.seed;
            ps = make_evrard(spec, box);
        }

        const SfcOrder order = sort_by_sfc(ps, box);
        const ParticleSet sorted = apply_sfc_order(ps, order);
        const Octree tree = build_octree(order);

        const BuildParams bp(cfg.cluster, cfg.mode, cfg.compress, cfg.cutoff_scale);
        const int threads = resolve_threads(cfg.threads);

        std::vector<double> build_times;
        NeighborStore store;
        for (int rep = 0; rep <= cfg.repeats; ++rep) {
            const auto t0 = Clock::now();
            store = build_neighbor_store(sorted, box, tree, bp, threads);
            if (rep > 0) build_times.push_back(ms_since(t0));
        }

        std::vector<double> pass_times;
        const PassStats stats =
            cfg.precision == Precision::f64
                ? run_pass<double>(sorted, box, store, cfg, pass_times)
                : run_pass<float>(sorted, box, store, cfg, pass_times);

        // The overhead metric is defined on gather (full) lists; symmetric runs
        // measure it on an auxiliary gather build with the same geometry.
        const NeighborStore* gather_store = &store;
        NeighborStore aux;
        if (cfg.mode != ListMode::gather) {
            aux = build_neighbor_store(sorted, box, tree,
                                       BuildParams(cfg.cluster, ListMode::gather, cfg.compress,
                                                   cfg.cutoff_scale),
                                       threads);
            gather_store = &aux;
        }
        std::uint64_t directed_pairs = stats.total_neighbors;
        if (cfg.mode != ListMode::gather || cfg.cutoff_scale != 1.0) {
            const auto counts = reduce<double>(sorted, box, *gather_store, CountKernel<double>{},
                                               PassConfig(1.0, cfg.isa, threads))
                                    .neighbor_count;
            directed_pairs = 0;
            for (const auto c : counts) directed_pairs += c;
        }

        BenchRow row;
        {
            std::ostringstream id;
            id << (cfg.distribution == Distribution::uniform ? "uniform" : "evrard") << "-n" << cfg.n
               << "-t" << target << "-" << cluster_name(cfg.cluster)
               << (cfg.compress ? "-comp" : "-raw")
               << (cfg.mode == ListMode::gather ? "-gather" : "-sym") << "-"
               << (cfg.kernel == KernelChoice::count ? "count"
                   : cfg.kernel == KernelChoice::density ? "density" : "lj")
               << (cfg.precision == Precision::f64 ? "-f64" : "-f32") << "-seed" << cfg.seed;
            row.config_id = id.str();
        }
        row.n = cfg.n;
        row.mean_neighbors = stats.mean_neighbors;
        row.build_ms = min_of(build_times);
        row.build_ms_median = median_of(build_times);
        row.pass_ms = min_of(pass_times);
        row.pass_ms_median = median_of(pass_times);
        row.bytes_per_particle = memory_footprint(store).bytes_per_particle;
        row.overhead_ratio = cluster_overhead(*gather_store, directed_pairs);
        row.output_hash = stats.hash;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string csv_header() {
    return "config_id,n,mean_neighbors,build_ms,pass_ms,bytes_per_particle,overhead_ratio,"
           "output_hash,build_ms_median,pass_ms_median";
}

std::string csv_row(const BenchRow& row) {
    std::ostringstream out;
    out << row.config_id << ',' << row.n << ',' << row.mean_neighbors << ',' << row.build_ms << ','
        << row.pass_ms << ',' << row.bytes_per_particle << ',' << row.overhead_ratio << ','
        << row.output_hash << ',' << row.build_ms_median << ',' << row.pass_ms_median;
    return out.str();
}

ClusterParams parse_cluster(const std::string& text, int w) {
    if (text == "8x8") return ClusterParams(8, 8, w);
    if (text == "8x4") return ClusterParams(8, 4, w);
    if (text == "1x1") return ClusterParams(1, 1, w);
    throw InputError("unknown cluster configuration (expected 8x8, 8x4 or 1x1): " + text);
}

std::string cluster_name(const ClusterParams& params) {
    return std::to_string(params.ci) + "x" + std::to_string(params.cj);
}

}  // namespace sfcnl::bench
