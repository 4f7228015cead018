#include "sfcnl/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace sfcnl {

namespace {

/// Squared distance minimized over all periodic images, axis sum in x,y,z order.
double image_min_dist_sq(const ParticleSet& ps, const SimulationBox& box, std::size_t i,
                         std::size_t j) {
    const double dx = ps.x[i] - ps.x[j];
    const double dy = ps.y[i] - ps.y[j];
    const double dz = ps.z[i] - ps.z[j];
    double best = std::numeric_limits<double>::infinity();
    const int sx = box.periodic[0] ? 1 : 0;
    const int sy = box.periodic[1] ? 1 : 0;
    const int sz = box.periodic[2] ? 1 : 0;
    for (int ix = -sx; ix <= sx; ++ix)
        for (int iy = -sy; iy <= sy; ++iy)
            for (int iz = -sz; iz <= sz; ++iz) {
                const double ddx = dx - ix * box.length(0);
                const double ddy = dy - iy * box.length(1);
                const double ddz = dz - iz * box.length(2);
                const double d2 = ddx * ddx + ddy * ddy + ddz * ddz;
                best = std::min(best, d2);
            }
    return best;
}

bool within(const ParticleSet& ps, const SimulationBox& box, double scale, ListMode mode,
            std::size_t i, std::size_t j) {
    const double r =
        scale * (mode == ListMode::symmetric ? std::max(ps.h[i], ps.h[j]) : ps.h[i]);
    return image_min_dist_sq(ps, box, i, j) <= r * r;
}

FullVerletList full_list_cell_grid(const ParticleSet& ps, const SimulationBox& box,
                                   double build_scale, ListMode mode) {
    const std::size_t n = ps.size();
    double max_h = 0;
    for (double hv : ps.h) max_h = std::max(max_h, hv);
    const double cutoff = build_scale * max_h;
    if (cutoff <= 0) throw InputError("build_full_list: non-positive cutoff");

    int dims[3];
    double edge[3];
    for (int d = 0; d < 3; ++d) {
        dims[d] = std::max(1, int(std::floor(box.length(d) / cutoff)));
        edge[d] = box.length(d) / dims[d];
        if (box.periodic[d] && dims[d] < 2 && box.length(d) < 2 * cutoff)
            throw InputError("build_full_list: periodic box must span twice the cutoff");
    }

    auto cell_of = [&](std::size_t i, int d) {
        const double c = (ps.pos(i)[d] - box.lo[d]) / edge[d];
        return std::min(dims[d] - 1, std::max(0, int(c)));
    };
    auto cell_index = [&](int cx, int cy, int cz) {
        return (std::size_t(cz) * dims[1] + cy) * dims[0] + cx;
    };

    // Bucket particles by cell (counting sort keeps neighbor output ascending later).
    const std::size_t num_cells = std::size_t(dims[0]) * dims[1] * dims[2];
    std::vector<std::uint32_t> cell_count(num_cells + 1, 0);
    std::vector<std::size_t> cell_id(n);
    for (std::size_t i = 0; i < n; ++i) {
        cell_id[i] = cell_index(cell_of(i, 0), cell_of(i, 1), cell_of(i, 2));
        ++cell_count[cell_id[i] + 1];
    }
    for (std::size_t c = 0; c < num_cells; ++c) cell_count[c + 1] += cell_count[c];
    std::vector<std::uint32_t> cell_items(n);
    {
        std::vector<std::uint32_t> cursor(cell_count.begin(), cell_count.end() - 1);
        for (std::size_t i = 0; i < n; ++i) cell_items[cursor[cell_id[i]]++] = std::uint32_t(i);
    }

    FullVerletList list;
    list.mode = mode;
    list.build_scale = build_scale;
    list.offsets.assign(n + 1, 0);

    std::vector<std::uint32_t> candidates;
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < n; ++i) {
        // Collect candidate cells around i's cell, deduplicating wrapped shifts.
        cells.clear();
        const int cc[3] = {cell_of(i, 0), cell_of(i, 1), cell_of(i, 2)};
        int lo[3], hi[3];
        for (int d = 0; d < 3; ++d) {
            lo[d] = cc[d] - 1;
            hi[d] = cc[d] + 1;
            if (!box.periodic[d]) {
                lo[d] = std::max(0, lo[d]);
                hi[d] = std::min(dims[d] - 1, hi[d]);
            } else if (dims[d] < 3) {
                lo[d] = 0;
                hi[d] = dims[d] - 1;
            }
        }
        for (int cz = lo[2]; cz <= hi[2]; ++cz)
            for (int cy = lo[1]; cy <= hi[1]; ++cy)
                for (int cx = lo[0]; cx <= hi[0]; ++cx) {
                    const int wx = (cx + dims[0]) % dims[0];
                    const int wy = (cy + dims[1]) % dims[1];
                    const int wz = (cz + dims[2]) % dims[2];
                    cells.push_back(cell_index(wx, wy, wz));
                }
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

        candidates.clear();
        const Vec3 pi = ps.pos(i);
        for (const std::size_t c : cells) {
            for (std::uint32_t s = cell_count[c]; s < cell_count[c + 1]; ++s) {
                const std::uint32_t j = cell_items[s];
                if (j == i) continue;
                const double r = build_scale * (mode == ListMode::symmetric
                                                    ? std::max(ps.h[i], ps.h[j])
                                                    : ps.h[i]);
                const auto [dxy, d2] = periodic_delta(pi, ps.pos(j), box);
                if (d2 <= r * r) candidates.push_back(j);
            }
        }
        std::sort(candidates.begin(), candidates.end());
        list.offsets[i + 1] = list.offsets[i] + candidates.size();
        list.neighbors.insert(list.neighbors.end(), candidates.begin(), candidates.end());
    }
    return list;
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_force_pairs(const ParticleSet& ps,
                                                                       const SimulationBox& box,
                                                                       double scale, ListMode mode,
                                                                       std::size_t cap) {
    const std::size_t n = ps.size();
    if (n > cap) throw InputError("brute_force_pairs: particle count exceeds the oracle cap");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (within(ps, box, scale, mode, i, j))
                pairs.emplace_back(std::uint32_t(i), std::uint32_t(j));
        }
    return pairs;
}

std::vector<std::uint32_t> brute_force_counts(const ParticleSet& ps, const SimulationBox& box,
                                              double scale, ListMode mode, std::size_t cap) {
    const std::size_t n = ps.size();
    if (n > cap) throw InputError("brute_force_counts: particle count exceeds the oracle cap");
    std::vector<std::uint32_t> counts(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (within(ps, box, scale, mode, i, j)) ++counts[i];
        }
    return counts;
}

FullVerletList build_full_list(const ParticleSet& ps, const SimulationBox& box, double build_scale,
                               ListMode mode, FullListMethod method, std::size_t cap) {
    const std::size_t n = ps.size();
    const bool brute = method == FullListMethod::brute_force ||
                       (method == FullListMethod::automatic && n <= cap);
    if (!brute) return full_list_cell_grid(ps, box, build_scale, mode);

    FullVerletList list;
    list.mode = mode;
    list.build_scale = build_scale;
    list.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t begin = list.neighbors.size();
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (within(ps, box, build_scale, mode, i, j)) list.neighbors.push_back(std::uint32_t(j));
        }
        list.offsets[i] = begin;
        list.offsets[i + 1] = list.neighbors.size();
    }
    return list;
}

}  // namespace sfcnl
