#include "sfcnl/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sfcnl {

namespace {

/// Uniform double in [0, 1) from the top 53 bits; identical across platforms.
double canonical(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double uniform_h_for_target(double target, double rho) {
    if (!(target > 0) || !(rho > 0)) throw InputError("uniform_h_for_target: positive inputs required");
    return std::cbrt(3.0 * target / (4.0 * std::numbers::pi_v<double> * rho));
}

ParticleSet make_uniform(const UniformSpec& spec, SimulationBox& box) {
    if (spec.n < 1) throw InputError("make_uniform: n must be >= 1");
    if (!(spec.h_jitter >= 0) || spec.h_jitter >= 1)
        throw InputError("make_uniform: h_jitter must be in [0, 1)");
    const double side = std::cbrt(double(spec.n) / spec.density);
    box = SimulationBox({0, 0, 0}, {side, side, side}, spec.periodic);

    const double h0 = uniform_h_for_target(spec.target_neighbors, spec.density);
    std::mt19937_64 rng(spec.seed);
    ParticleSet ps;
    ps.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        ps.x[i] = canonical(rng) * side;
        ps.y[i] = canonical(rng) * side;
        ps.z[i] = canonical(rng) * side;
        ps.h[i] = spec.h_jitter > 0 ? h0 * (1.0 + spec.h_jitter * (2.0 * canonical(rng) - 1.0)) : h0;
    }
    auto& m = ps.add_field("m");
    auto& q = ps.add_field("q");
    for (std::size_t i = 0; i < spec.n; ++i) {
        m[i] = 1.0;
        q[i] = (i % 2 == 0) ? 1.0 : -1.0;  // net-neutral charges for Coulomb runs
    }
    return ps;
}

ParticleSet make_evrard(const EvrardSpec& spec, SimulationBox& box) {
    if (spec.n < 1) throw InputError("make_evrard: n must be >= 1");
    constexpr double kRadius = 1.0;
    const double margin = 1.1 * kRadius;
    box = SimulationBox({-margin, -margin, -margin}, {margin, margin, margin}, spec.periodic);

    std::mt19937_64 rng(spec.seed);
    ParticleSet ps;
    ps.resize(spec.n);

    // Mass density ~ 1/r gives the radial CDF M(r)/M = (r/R)^2.
    const double alpha = std::cbrt(3.0 * spec.target_neighbors / (4.0 * std::numbers::pi_v<double>));
    const double mean_r = 2.0 / 3.0 * kRadius;  // E[sqrt(u)]
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double r = kRadius * std::sqrt(canonical(rng));
        const double cos_t = 1.0 - 2.0 * canonical(rng);
        const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
        const double phi = 2.0 * std::numbers::pi_v<double> * canonical(rng);
        ps.x[i] = r * sin_t * std::cos(phi);
        ps.y[i] = r * sin_t * std::sin(phi);
        ps.z[i] = r * cos_t;

        // Local number density nu(r) = n / (2 pi R^2 r); spacing nu^(-1/3).
        const double r_for_h = spec.constant_h ? mean_r : r;
        const double spacing =
            std::cbrt(2.0 * std::numbers::pi_v<double> * kRadius * kRadius * r_for_h / double(spec.n));
        ps.h[i] = alpha * spacing;
    }
    auto& m = ps.add_field("m");
    auto& q = ps.add_field("q");
    for (std::size_t i = 0; i < spec.n; ++i) {
        m[i] = 1.0 / double(spec.n);
        q[i] = (i % 2 == 0) ? 1.0 : -1.0;
    }
    return ps;
}

}  // namespace sfcnl
