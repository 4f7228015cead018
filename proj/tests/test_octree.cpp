#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sfcnl/octree.hpp"

using namespace sfcnl;

namespace {

ParticleSet random_set(std::size_t n, std::uint64_t seed, double h = 0.05) {
    std::mt19937_64 rng(seed);
    ParticleSet ps;
    ps.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        ps.x[i] = double(rng() >> 11) * 0x1.0p-53;
        ps.y[i] = double(rng() >> 11) * 0x1.0p-53;
        ps.z[i] = double(rng() >> 11) * 0x1.0p-53;
        ps.h[i] = h * (0.5 + double(rng() >> 11) * 0x1.0p-53);
    }
    return ps;
}

/// Minimum point-to-box distance over all periodic images, the slow way.
double image_min_dist_sq(const Vec3& p, const Aabb& aabb, const SimulationBox& box) {
    double best = std::numeric_limits<double>::infinity();
    const int sx = box.periodic[0] ? 1 : 0;
    const int sy = box.periodic[1] ? 1 : 0;
    const int sz = box.periodic[2] ? 1 : 0;
    for (int ix = -sx; ix <= sx; ++ix)
        for (int iy = -sy; iy <= sy; ++iy)
            for (int iz = -sz; iz <= sz; ++iz) {
                double s = 0;
                const Vec3 q{p.x + ix * box.length(0), p.y + iy * box.length(1),
                             p.z + iz * box.length(2)};
                for (int d = 0; d < 3; ++d) {
                    double g = 0;
                    if (q[d] < aabb.lo[d]) g = aabb.lo[d] - q[d];
                    else if (q[d] > aabb.hi[d]) g = q[d] - aabb.hi[d];
                    s += g * g;
                }
                best = std::min(best, s);
            }
    return best;
}

}  // namespace

TEST_CASE("single particle gives a single-leaf tree") {
    SimulationBox box({0, 0, 0}, {1, 1, 1});
    ParticleSet ps;
    ps.resize(1);
    ps.x[0] = ps.y[0] = ps.z[0] = 0.3;
    ps.h[0] = 0.1;
    const Octree tree = build_octree(sort_by_sfc(ps, box), 64);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.root().is_leaf());
    CHECK(tree.root().particle_begin == 0);
    CHECK(tree.root().particle_end == 1);
}

TEST_CASE("empty particle set gives an empty root leaf") {
    SimulationBox box({0, 0, 0}, {1, 1, 1});
    ParticleSet ps;
    const Octree tree = build_octree(sort_by_sfc(ps, box), 64);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.root().is_leaf());
    CHECK(tree.root().count() == 0);
    CHECK(node_aabb(tree, 0, ps).empty());
}

TEST_CASE("512 distinct cells at bits=3 with bucket_size=1 give singleton leaves") {
    SimulationBox box({0, 0, 0}, {1, 1, 1});
    ParticleSet ps;
    ps.resize(512);
    std::size_t i = 0;
    for (std::uint32_t x = 0; x < 8; ++x)
        for (std::uint32_t y = 0; y < 8; ++y)
            for (std::uint32_t z = 0; z < 8; ++z, ++i) {
                ps.x[i] = (x + 0.5) / 8;
                ps.y[i] = (y + 0.5) / 8;
                ps.z[i] = (z + 0.5) / 8;
                ps.h[i] = 0.01;
            }
    const Octree tree = build_octree(sort_by_sfc(ps, box, 3), 1);
    std::size_t leaves = 0;
    tree.for_each_leaf([&](std::int32_t, const OctreeNode& nd) {
        if (nd.count() > 0) {
            CHECK(nd.count() == 1);
            ++leaves;
        }
    });
    CHECK(leaves == 512);
}

TEST_CASE("uniform random tree invariants") {
    SimulationBox box({0, 0, 0}, {1, 1, 1});
    const ParticleSet ps = random_set(10000, 5);
    const SfcOrder order = sort_by_sfc(ps, box);
    const ParticleSet sorted = apply_sfc_order(ps, order);
    const Octree tree = build_octree(order, 64);

    SUBCASE("leaves partition [0, n) in depth-first order, each within the bucket") {
        std::uint32_t cursor = 0;
        std::uint64_t total = 0;
        tree.for_each_leaf([&](std::int32_t, const OctreeNode& nd) {
            CHECK(nd.particle_begin == cursor);
            CHECK(nd.count() <= 64);
            cursor = nd.particle_end;
            total += nd.count();
        });
        CHECK(cursor == 10000);
        CHECK(total == 10000);
    }

    SUBCASE("children partition the parent key range and particle range") {
        for (std::size_t node = 0; node < tree.nodes.size(); ++node) {
            const OctreeNode& nd = tree.nodes[node];
            if (nd.is_leaf()) continue;
            HilbertKey key_cursor = nd.key_first;
            std::uint32_t part_cursor = nd.particle_begin;
            for (int c = 0; c < 8; ++c) {
                const OctreeNode& ch = tree.nodes[std::size_t(nd.first_child) + c];
                CHECK(ch.key_first == key_cursor);
                CHECK(ch.particle_begin == part_cursor);
                key_cursor = ch.key_last;
                part_cursor = ch.particle_end;
            }
            CHECK(key_cursor == nd.key_last);
            CHECK(part_cursor == nd.particle_end);
        }
    }

    SUBCASE("every node holds exactly the particles of its key range") {
        for (std::size_t node = 0; node < tree.nodes.size(); ++node) {
            const OctreeNode& nd = tree.nodes[node];
            for (std::uint32_t i = nd.particle_begin; i < nd.particle_end; ++i) {
                CHECK(order.keys[i] >= nd.key_first);
                CHECK(order.keys[i] < nd.key_last);
            }
        }
    }

    SUBCASE("node boxes are tight and nested") {
        const auto boxes = compute_node_aabbs(tree, sorted);
        for (std::size_t node = 0; node < tree.nodes.size(); ++node) {
            const Aabb direct = node_aabb(tree, std::int32_t(node), sorted);
            if (direct.empty()) {
                CHECK(boxes[node].empty());
                continue;
            }
            for (int d = 0; d < 3; ++d) {
                CHECK(boxes[node].lo[d] == direct.lo[d]);
                CHECK(boxes[node].hi[d] == direct.hi[d]);
            }
            const OctreeNode& nd = tree.nodes[node];
            for (std::uint32_t i = nd.particle_begin; i < nd.particle_end; ++i) {
                CHECK(boxes[node].contains(sorted.pos(i)));
                CHECK(min_dist_sq(sorted.pos(i), boxes[node], box) == 0.0);
            }
        }
        const auto radii = compute_node_max_radius(tree, sorted);
        tree.for_each_leaf([&](std::int32_t node, const OctreeNode& nd) {
            double expect = 0;
            for (std::uint32_t i = nd.particle_begin; i < nd.particle_end; ++i)
                expect = std::max(expect, sorted.h[i]);
            CHECK(radii[std::size_t(node)] == expect);
        });
    }

    SUBCASE("single-particle aabb degenerates to the position") {
        ParticleSet one;
        one.resize(1);
        one.x[0] = 0.2;
        one.y[0] = 0.4;
        one.z[0] = 0.6;
        one.h[0] = 0.1;
        const Octree t1 = build_octree(sort_by_sfc(one, box), 64);
        const Aabb b1 = node_aabb(t1, 0, one);
        CHECK(b1.lo.x == 0.2);
        CHECK(b1.hi.x == 0.2);
        CHECK(b1.lo.z == 0.6);
        CHECK(b1.hi.z == 0.6);
    }
}

TEST_CASE("duplicate positions exceed the bucket only at max depth") {
    SimulationBox box({0, 0, 0}, {1, 1, 1});
    ParticleSet ps;
    ps.resize(40);
    for (std::size_t i = 0; i < 40; ++i) {
        ps.x[i] = ps.y[i] = ps.z[i] = 0.123456;
        ps.h[i] = 0.1;
    }
    const Octree tree = build_octree(sort_by_sfc(ps, box, 4), 8);
    tree.for_each_leaf([&](std::int32_t, const OctreeNode& nd) {
        if (nd.count() > 8) CHECK(nd.depth == 4);
    });
}

TEST_CASE("min_dist_sq point-to-box") {
    SimulationBox open({-2, -2, -2}, {3, 3, 3});
    Aabb unit;
    unit.extend({0, 0, 0});
    unit.extend({1, 1, 1});

    CHECK(min_dist_sq({0.5, 0.5, 0.5}, unit, open) == 0.0);
    CHECK(min_dist_sq({2, 0.5, 0.5}, unit, open) == doctest::Approx(1.0));

    SimulationBox per({0, 0, 0}, {1, 1, 1}, {true, true, true});
    Aabb corner;
    corner.extend({0, 0, 0});
    corner.extend({0.1, 0.1, 0.1});
    // x-gap wraps: 0.95 is 0.05 away from 0 across the boundary.
    CHECK(min_dist_sq({0.95, 0.0, 0.0}, corner, per) == doctest::Approx(0.05 * 0.05));

    SUBCASE("matches the 27-image oracle on random inputs") {
        std::mt19937_64 rng(17);
        auto u = [&] { return double(rng() >> 11) * 0x1.0p-53; };
        for (int t = 0; t < 2000; ++t) {
            const std::array<bool, 3> flags{(rng() & 1) != 0, (rng() & 1) != 0, (rng() & 1) != 0};
            SimulationBox b({0, 0, 0}, {1 + u(), 1 + u(), 1 + u()}, flags);
            Aabb a;
            const Vec3 c1{u() * b.hi.x, u() * b.hi.y, u() * b.hi.z};
            const Vec3 c2{u() * b.hi.x, u() * b.hi.y, u() * b.hi.z};
            a.extend(c1);
            a.extend(c2);
            const Vec3 p{u() * b.hi.x, u() * b.hi.y, u() * b.hi.z};
            CHECK(min_dist_sq(p, a, b) == doctest::Approx(image_min_dist_sq(p, a, b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("aabb_dist_sq lower-bounds point distances across wrapping") {
    std::mt19937_64 rng(23);
    auto u = [&] { return double(rng() >> 11) * 0x1.0p-53; };
    SimulationBox box({0, 0, 0}, {1, 1, 1}, {true, false, true});
    for (int t = 0; t < 500; ++t) {
        Aabb a, b;
        Vec3 pa{u(), u(), u()}, pb{u(), u(), u()};
        a.extend(pa);
        a.extend({u(), u(), u()});
        b.extend(pb);
        b.extend({u(), u(), u()});
        const auto [d, d2] = periodic_delta(pa, pb, box);
        CHECK(aabb_dist_sq(a, b, box) <= d2 + 1e-15);
    }
}
