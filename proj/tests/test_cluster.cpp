#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sfcnl/cluster.hpp"

using namespace sfcnl;

TEST_CASE("cluster parameter validation") {
    CHECK_NOTHROW(ClusterParams(8, 8));
    CHECK_NOTHROW(ClusterParams(8, 4));
    CHECK_NOTHROW(ClusterParams(1, 1));
    CHECK_THROWS_AS(ClusterParams(8, 3), InputError);
    CHECK_THROWS_AS(ClusterParams(4, 8), InputError);  // cj must divide ci
    CHECK_THROWS_AS(ClusterParams(0, 8), InputError);
    CHECK_THROWS_AS(ClusterParams(8, 8, 16), InputError);
    CHECK(ClusterParams(8, 8).iclusters_per_sc() == 8);
    CHECK(ClusterParams(8, 8).mask_bytes_per_entry() == 1);
    CHECK(ClusterParams(1, 1).iclusters_per_sc() == 64);
    CHECK(ClusterParams(1, 1).mask_bytes_per_entry() == 8);
}

TEST_CASE("cluster ranges") {
    const ClusterParams p(8, 4);
    CHECK(cluster_range(ClusterKind::i, 0, p, 100) == std::pair<std::uint64_t, std::uint64_t>{0, 8});
    CHECK(cluster_range(ClusterKind::i, 12, p, 100) ==
          std::pair<std::uint64_t, std::uint64_t>{96, 100});
    CHECK(cluster_range(ClusterKind::super, 1, p, 100) ==
          std::pair<std::uint64_t, std::uint64_t>{64, 100});
    CHECK(cluster_range(ClusterKind::j, 24, p, 100) ==
          std::pair<std::uint64_t, std::uint64_t>{96, 100});
    CHECK_THROWS_AS(cluster_range(ClusterKind::i, 13, p, 100), InputError);
    CHECK_THROWS_AS(cluster_range(ClusterKind::super, 2, p, 100), InputError);
}

TEST_CASE("ranges of each kind partition the particle range") {
    for (const std::uint64_t n : {1ull, 7ull, 64ull, 100ull, 129ull, 1000ull}) {
        for (const auto& p : {ClusterParams(8, 8), ClusterParams(8, 4), ClusterParams(1, 1)}) {
            const ClusterIndexing idx(n, p);
            for (const ClusterKind kind : {ClusterKind::i, ClusterKind::j, ClusterKind::super}) {
                std::uint64_t cursor = 0;
                for (std::uint64_t k = 0; k < idx.count(kind); ++k) {
                    const auto [b, e] = idx.range(kind, k);
                    CHECK(b == cursor);
                    CHECK(e > b);
                    cursor = e;
                }
                CHECK(cursor == n);
            }
        }
    }
}

TEST_CASE("each j-cluster lies within one super-cluster when cj <= ci") {
    const std::uint64_t n = 999;
    for (const auto& p : {ClusterParams(8, 8), ClusterParams(8, 4)}) {
        const ClusterIndexing idx(n, p);
        for (std::uint64_t k = 0; k < idx.num_jclusters(); ++k) {
            const auto [b, e] = idx.range(ClusterKind::j, k);
            const std::uint64_t sc = k * p.cj / p.sc_size;
            const auto [sb, se] = idx.range(ClusterKind::super, sc);
            CHECK(b >= sb);
            CHECK(e <= se);
        }
    }
}

TEST_CASE("cluster bounding boxes and max radii") {
    SUBCASE("single particle degenerates") {
        ParticleSet ps;
        ps.resize(1);
        ps.x[0] = 1;
        ps.y[0] = 2;
        ps.z[0] = 3;
        ps.h[0] = 0.5;
        const Aabb box = cluster_aabb(ps, 0, 1);
        CHECK(box.lo.y == 2);
        CHECK(box.hi.y == 2);
        CHECK(cluster_max_radius(ps, 0, 1) == 0.5);
    }

    SUBCASE("two particles span the box") {
        ParticleSet ps;
        ps.resize(2);
        ps.x = {0, 1};
        ps.y = {2, -1};
        ps.z = {5, 5};
        ps.h = {1, 2};
        const Aabb box = cluster_aabb(ps, 0, 2);
        CHECK(box.lo.x == 0);
        CHECK(box.hi.x == 1);
        CHECK(box.lo.y == -1);
        CHECK(box.hi.y == 2);
        CHECK(cluster_max_radius(ps, 0, 2) == 2);
    }

    SUBCASE("random range equals a direct scan") {
        std::mt19937_64 rng(3);
        ParticleSet ps;
        ps.resize(8);
        for (std::size_t i = 0; i < 8; ++i) {
            ps.x[i] = double(rng() >> 11) * 0x1.0p-53;
            ps.y[i] = double(rng() >> 11) * 0x1.0p-53;
            ps.z[i] = double(rng() >> 11) * 0x1.0p-53;
            ps.h[i] = 0.01 + double(rng() >> 11) * 0x1.0p-53;
        }
        const Aabb box = cluster_aabb(ps, 0, 8);
        double hmax = 0;
        Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
        for (std::size_t i = 0; i < 8; ++i) {
            for (int d = 0; d < 3; ++d) {
                lo[d] = std::min(lo[d], ps.pos(i)[d]);
                hi[d] = std::max(hi[d], ps.pos(i)[d]);
            }
            hmax = std::max(hmax, ps.h[i]);
        }
        for (int d = 0; d < 3; ++d) {
            CHECK(box.lo[d] == lo[d]);
            CHECK(box.hi[d] == hi[d]);
        }
        CHECK(cluster_max_radius(ps, 0, 8) == hmax);
    }

    SUBCASE("empty ranges are rejected") {
        ParticleSet ps;
        ps.resize(4);
        CHECK_THROWS_AS(cluster_aabb(ps, 2, 2), InputError);
        CHECK_THROWS_AS(cluster_max_radius(ps, 3, 3), InputError);
    }

    SUBCASE("uniform radii") {
        ParticleSet ps;
        ps.resize(5);
        for (std::size_t i = 0; i < 5; ++i) ps.h[i] = 0.7;
        CHECK(cluster_max_radius(ps, 0, 5) == 0.7);
    }
}
