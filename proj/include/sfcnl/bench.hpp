#pragma once

#include <string>

#include "sfcnl/generators.hpp"
#include "sfcnl/neighbor_store.hpp"
#include "sfcnl/pair_kernel.hpp"

namespace sfcnl::bench {

enum class Distribution : std::uint8_t { uniform, evrard };
enum class KernelChoice : std::uint8_t { count, density, lj };
enum class Precision : std::uint8_t { f64, f32 };

struct BenchConfig {
    Distribution distribution = Distribution::uniform;
    std::size_t n = 100000;
    std::vector<double> target_neighbors = {200.0};
    double cutoff_scale = 1.0;  ///< build radius scale (Verlet skin factor)
    ClusterParams cluster{8, 4};
    bool compress = true;
    ListMode mode = ListMode::gather;
    KernelChoice kernel = KernelChoice::count;
    std::array<bool, 3> periodic{true, true, true};
    std::uint64_t seed = 42;
    int repeats = 3;
    Precision precision = Precision::f64;
    Isa isa = Isa::automatic;
    int threads = 0;  ///< 0 = hardware concurrency
    double density = 100.0;
    double lj_epsilon = 1.0;
    double lj_sigma = 0.0;  ///< 0 = half the mean interparticle spacing
    double coulomb_k = 0.0;
};

struct BenchRow {
    std::string config_id;
    std::size_t n = 0;
    double mean_neighbors = 0;
    double build_ms = 0;   ///< min over repeats
    double pass_ms = 0;    ///< min over repeats
    double bytes_per_particle = 0;
    double overhead_ratio = 0;
    std::string output_hash;
    double build_ms_median = 0;
    double pass_ms_median = 0;
};

/// Evaluated pair slots of a gather-mode store divided by the exact number of
/// directed in-range pairs. Equals 1 for degenerate 1x1 clusters.
double cluster_overhead(const NeighborStore& store, std::uint64_t true_directed_pairs);

/// Runs one benchmark per target-neighbor value; fully reproducible from the config.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

std::string csv_header();
std::string csv_row(const BenchRow& row);

ClusterParams parse_cluster(const std::string& text, int w = 32);
std::string cluster_name(const ClusterParams& params);

}  // namespace sfcnl::bench
