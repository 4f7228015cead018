#include "sfcnl/hilbert.hpp"

#include <algorithm>
#include <numeric>

namespace sfcnl {

SfcOrder sort_by_sfc(const ParticleSet& ps, const SimulationBox& box, int bits) {
    check_sfc_bits(bits);
    const std::size_t n = ps.size();

    std::vector<HilbertKey> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = sfc_key(ps.pos(i), box, bits);

    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });

    SfcOrder order;
    order.bits = bits;
    order.perm = std::move(perm);
    order.keys.resize(n);
    for (std::size_t k = 0; k < n; ++k) order.keys[k] = keys[order.perm[k]];
    return order;
}

ParticleSet apply_sfc_order(const ParticleSet& ps, const SfcOrder& order) {
    const std::size_t n = ps.size();
    if (order.perm.size() != n) throw InputError("apply_sfc_order: permutation size mismatch");

    ParticleSet out;
    auto gather = [&](const std::vector<double>& in) {
        std::vector<double> v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = in[order.perm[k]];
        return v;
    };
    out.x = gather(ps.x);
    out.y = gather(ps.y);
    out.z = gather(ps.z);
    out.h = gather(ps.h);
    for (const auto& [name, v] : ps.fields) out.fields.emplace(name, gather(v));
    return out;
}

}  // namespace sfcnl
