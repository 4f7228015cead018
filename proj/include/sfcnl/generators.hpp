#pragma once

#include <cstdint>

#include "sfcnl/core.hpp"

namespace sfcnl {

/// Uniform random particles at the given number density. The box is a cube
/// with side (n / density)^(1/3); the constant interaction radius is chosen so
/// that a sphere of radius h holds target_neighbors particles on average:
/// (4/3) pi h^3 density = target_neighbors. h_jitter > 0 perturbs per-particle
/// radii by a uniform factor in [1 - j, 1 + j].
struct UniformSpec {
    std::size_t n = 1000;
    double density = 100.0;
    double target_neighbors = 50.0;
    std::array<bool, 3> periodic{true, true, true};
    double h_jitter = 0.0;
    std::uint64_t seed = 42;
};

/// Gas sphere with mass density proportional to 1/r inside the unit sphere,
/// sampled by inverse CDF (r = sqrt(u)); per-particle radii scale with the
/// local mean interparticle spacing so the expected neighbor count is uniform.
struct EvrardSpec {
    std::size_t n = 1000;
    double target_neighbors = 50.0;
    bool constant_h = false;
    std::array<bool, 3> periodic{false, false, false};
    std::uint64_t seed = 42;
};

ParticleSet make_uniform(const UniformSpec& spec, SimulationBox& box);
ParticleSet make_evrard(const EvrardSpec& spec, SimulationBox& box);

/// Constant radius giving `target` expected neighbors at number density `rho`.
double uniform_h_for_target(double target, double rho);

}  // namespace sfcnl
