#pragma once

#include <cmath>
#include <numbers>

#include "sfcnl/pair_kernel.hpp"

namespace sfcnl {

/// Normalized 3D cubic B-spline with compact support at distance h:
/// W(0, h) = 8 / (pi h^3) and the integral over the support ball is 1.
template <class Real>
Real cubic_spline_w(Real r, Real h) {
    const Real q = r / h;
    if (q > Real(1)) return Real(0);
    const Real sigma = Real(8) / (Real(std::numbers::pi_v<double>) * h * h * h);
    if (q <= Real(0.5)) return sigma * (Real(1) + Real(6) * q * q * (q - Real(1)));
    const Real t = Real(1) - q;
    return sigma * Real(2) * t * t * t;
}

/// Counts neighbors within the query cutoff.
template <class Real>
struct CountKernel {
    static constexpr std::size_t num_inputs = 0;
    static constexpr std::size_t num_outputs = 1;
    static constexpr bool has_postamble = false;

    std::array<const char*, 0> inputs{};
    std::array<OutputSpec, 1> outputs{{{"count", Symmetry::even, Reduction::sum}}};

    std::array<Real, 1> pair(const PairArgs<Real>&, const std::array<Real, 0>&,
                             const std::array<Real, 0>&) const {
        return {Real(1)};
    }
    void postamble(std::size_t, std::array<Real, 1>&, std::uint32_t) const {}
};

/// 12/6 Lennard-Jones forces and pair energy; with Coulomb = true a
/// k_e * q_i * q_j / r term (bound to field "q") is added under the same cutoff.
template <class Real, bool Coulomb = false>
struct LjKernel {
    static constexpr std::size_t num_inputs = Coulomb ? 1 : 0;
    static constexpr std::size_t num_outputs = 4;
    static constexpr bool has_postamble = false;

    Real epsilon = 1;
    Real sigma = 1;
    Real coulomb_k = 0;

    std::array<const char*, num_inputs> inputs = [] {
        if constexpr (Coulomb) return std::array<const char*, 1>{"q"};
        else return std::array<const char*, 0>{};
    }();
    std::array<OutputSpec, 4> outputs{{{"fx", Symmetry::odd, Reduction::sum},
                                       {"fy", Symmetry::odd, Reduction::sum},
                                       {"fz", Symmetry::odd, Reduction::sum},
                                       {"energy", Symmetry::even, Reduction::sum}}};

    std::array<Real, 4> pair(const PairArgs<Real>& a, const std::array<Real, num_inputs>& in_i,
                             const std::array<Real, num_inputs>& in_j) const {
        if (a.d2 == Real(0)) throw InputError("LjKernel: coincident particles");
        const Real inv2 = Real(1) / a.d2;
        const Real s2 = sigma * sigma * inv2;
        const Real s6 = s2 * s2 * s2;
        Real coef = Real(24) * epsilon * inv2 * (Real(2) * s6 * s6 - s6);
        Real energy = Real(4) * epsilon * (s6 * s6 - s6);
        if constexpr (Coulomb) {
            const Real qq = coulomb_k * in_i[0] * in_j[0];
            const Real inv_r = std::sqrt(inv2);
            energy += qq * inv_r;
            coef += qq * inv_r * inv2;
        }
        return {coef * a.dx.x, coef * a.dx.y, coef * a.dx.z, energy};
    }
    void postamble(std::size_t, std::array<Real, 4>&, std::uint32_t) const {}
};

/// SPH density: rho_i = sum_j m_j W(d_ij, h_i), mass bound to field "m".
/// Marking the output even is exact for equal masses and constant h.
template <class Real>
struct SphDensityKernel {
    static constexpr std::size_t num_inputs = 1;
    static constexpr std::size_t num_outputs = 1;
    static constexpr bool has_postamble = false;

    std::array<const char*, 1> inputs{"m"};
    std::array<OutputSpec, 1> outputs{{{"rho", Symmetry::even, Reduction::sum}}};

    std::array<Real, 1> pair(const PairArgs<Real>& a, const std::array<Real, 1>&,
                             const std::array<Real, 1>& in_j) const {
        return {in_j[0] * cubic_spline_w(std::sqrt(a.d2), a.h_i)};
    }
    void postamble(std::size_t, std::array<Real, 1>&, std::uint32_t) const {}
};

template <class Real = double>
CountKernel<Real> count_kernel() {
    return {};
}

template <class Real = double>
LjKernel<Real, false> lj_kernel(Real epsilon, Real sigma) {
    LjKernel<Real, false> k;
    k.epsilon = epsilon;
    k.sigma = sigma;
    return k;
}

template <class Real = double>
LjKernel<Real, true> lj_coulomb_kernel(Real epsilon, Real sigma, Real coulomb_k) {
    LjKernel<Real, true> k;
    k.epsilon = epsilon;
    k.sigma = sigma;
    k.coulomb_k = coulomb_k;
    return k;
}

template <class Real = double>
SphDensityKernel<Real> sph_density_kernel() {
    return {};
}

}  // namespace sfcnl
