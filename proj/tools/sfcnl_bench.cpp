// Benchmark harness: generates particle distributions, builds clustered
// neighbor stores, runs pair-interaction passes and reports CSV metrics.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sfcnl/bench.hpp"
#include "sfcnl/neighbor_build.hpp"
#include "sfcnl/octree.hpp"

namespace {

std::array<bool, 3> parse_periodic(const std::string& text) {
    if (text == "none" || text.empty()) return {false, false, false};
    std::array<bool, 3> p{false, false, false};
    for (const char c : text) {
        switch (c) {
            case 'x': p[0] = true; break;
            case 'y': p[1] = true; break;
            case 'z': p[2] = true; break;
            default: throw CLI::ValidationError("--periodic", "expected a subset of xyz or none");
        }
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustered compressed neighbor-list benchmark"};
    app.set_config("--config")->description("key=value config file (flags take precedence)");

    sfcnl::bench::BenchConfig cfg;
    std::string distribution = "uniform";
    std::string cluster = "8x4";
    std::string compress = "on";
    std::string mode = "gather";
    std::string kernel = "count";
    std::string periodic = "xyz";
    std::string precision = "double";
    std::string isa = "auto";
    std::string csv_path;
    std::string dump_store_path;
    int block_width = 32;

    app.add_option("--distribution", distribution, "uniform | evrard")
        ->check(CLI::IsMember({"uniform", "evrard"}));
    app.add_option("--n", cfg.n, "particle count")->check(CLI::PositiveNumber);
    app.add_option("--target-neighbors", cfg.target_neighbors,
                   "desired mean neighbor count(s); several values sweep the cutoff")
        ->delimiter(',');
    app.add_option("--cutoff-scale", cfg.cutoff_scale, "build radius scale (Verlet skin factor)")
        ->check(CLI::Range(1.0, 10.0));
    app.add_option("--cluster", cluster, "8x8 | 8x4 | 1x1")
        ->check(CLI::IsMember({"8x8", "8x4", "1x1"}));
    app.add_option("--compress", compress, "on | off")->check(CLI::IsMember({"on", "off"}));
    app.add_option("--mode", mode, "gather | symmetric")
        ->check(CLI::IsMember({"gather", "symmetric"}));
    app.add_option("--kernel", kernel, "lj | density | count")
        ->check(CLI::IsMember({"lj", "density", "count"}));
    app.add_option("--periodic", periodic, "periodic axes: subset of xyz, or none");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--repeats", cfg.repeats, "timed repetitions")->check(CLI::PositiveNumber);
    app.add_option("--csv", csv_path, "write CSV here instead of stdout");
    app.add_option("--precision", precision, "double | single")
        ->check(CLI::IsMember({"double", "single"}));
    app.add_option("--isa", isa, "auto | scalar | avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    app.add_option("--density", cfg.density, "number density for uniform runs")
        ->check(CLI::PositiveNumber);
    app.add_option("--block-width", block_width, "codec block width (32 or 64)")
        ->check(CLI::IsMember({32, 64}));
    app.add_option("--lj-epsilon", cfg.lj_epsilon, "LJ well depth");
    app.add_option("--lj-sigma", cfg.lj_sigma, "LJ length scale (0 = auto)");
    app.add_option("--coulomb-k", cfg.coulomb_k, "Coulomb prefactor (0 = LJ only)");
    app.add_option("--dump-store", dump_store_path,
                   "write the last built neighbor store to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.distribution = distribution == "uniform" ? sfcnl::bench::Distribution::uniform
                                                     : sfcnl::bench::Distribution::evrard;
        cfg.cluster = sfcnl::bench::parse_cluster(cluster, block_width);
        cfg.compress = compress == "on";
        cfg.mode = mode == "gather" ? sfcnl::ListMode::gather : sfcnl::ListMode::symmetric;
        cfg.kernel = kernel == "lj"        ? sfcnl::bench::KernelChoice::lj
                     : kernel == "density" ? sfcnl::bench::KernelChoice::density
                                           : sfcnl::bench::KernelChoice::count;
        if (!app.count("--periodic") && distribution == "evrard") periodic = "none";
        cfg.periodic = parse_periodic(periodic);
        cfg.precision = precision == "double" ? sfcnl::bench::Precision::f64
                                              : sfcnl::bench::Precision::f32;
        cfg.isa = isa == "auto" ? sfcnl::Isa::automatic
                  : isa == "scalar" ? sfcnl::Isa::scalar
                                    : sfcnl::Isa::avx2;

        const auto rows = sfcnl::bench::run_bench(cfg);

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!csv_path.empty()) {
            file.open(csv_path);
            if (!file) throw std::runtime_error("cannot open " + csv_path);
            out = &file;
        }
        *out << sfcnl::bench::csv_header() << '\n';
        for (const auto& row : rows) *out << sfcnl::bench::csv_row(row) << '\n';

        if (!dump_store_path.empty()) {
            sfcnl::SimulationBox box({0, 0, 0}, {1, 1, 1});
            sfcnl::ParticleSet ps;
            if (cfg.distribution == sfcnl::bench::Distribution::uniform) {
                sfcnl::UniformSpec spec;
                spec.n = cfg.n;
                spec.density = cfg.density;
                spec.target_neighbors = cfg.target_neighbors.back();
                spec.periodic = cfg.periodic;
                spec.seed = cfg.seed;
                ps = sfcnl::make_uniform(spec, box);
            } else {
                sfcnl::EvrardSpec spec;
                spec.n = cfg.n;
                spec.target_neighbors = cfg.target_neighbors.back();
                spec.periodic = cfg.periodic;
                spec.seed = cfg.seed;
                ps = sfcnl::make_evrard(spec, box);
            }
            const auto order = sfcnl::sort_by_sfc(ps, box);
            const auto sorted = sfcnl::apply_sfc_order(ps, order);
            const auto tree = sfcnl::build_octree(order);
            const auto store = sfcnl::build_neighbor_store(
                sorted, box, tree,
                sfcnl::BuildParams(cfg.cluster, cfg.mode, cfg.compress, cfg.cutoff_scale),
                sfcnl::resolve_threads(cfg.threads));
            sfcnl::write_store(store, dump_store_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
