#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "sfcnl/hilbert.hpp"

using namespace sfcnl;

TEST_CASE("grid_coords maps box corners and center") {
    SimulationBox box({0, 0, 0}, {2, 4, 8});
    CHECK(grid_coords({0, 0, 0}, box, 4) == std::array<std::uint32_t, 3>{0, 0, 0});
    CHECK(grid_coords({2, 4, 8}, box, 4) == std::array<std::uint32_t, 3>{15, 15, 15});
    CHECK(grid_coords({1, 2, 4}, box, 4) == std::array<std::uint32_t, 3>{8, 8, 8});
}

TEST_CASE("grid_coords rejects non-finite input") {
    SimulationBox box({0, 0, 0}, {1, 1, 1});
    CHECK_THROWS_AS(grid_coords({std::nan(""), 0, 0}, box, 4), InputError);
    CHECK_THROWS_AS(grid_coords({0, std::numeric_limits<double>::infinity(), 0}, box, 4),
                    InputError);
}

TEST_CASE("hilbert_encode origin and input validation") {
    for (int bits = 1; bits <= 21; ++bits) CHECK(hilbert_encode(0, 0, 0, bits) == 0);
    CHECK_THROWS_AS(hilbert_encode(8, 0, 0, 3), InputError);
    CHECK_THROWS_AS(hilbert_encode(0, 0, 0, 0), InputError);
    CHECK_THROWS_AS(hilbert_encode(0, 0, 0, 22), InputError);
}

TEST_CASE("round-trip is the identity, exhaustively for bits <= 3") {
    for (int bits = 1; bits <= 3; ++bits) {
        const std::uint32_t side = 1u << bits;
        std::set<HilbertKey> seen;
        for (std::uint32_t x = 0; x < side; ++x)
            for (std::uint32_t y = 0; y < side; ++y)
                for (std::uint32_t z = 0; z < side; ++z) {
                    const HilbertKey key = hilbert_encode(x, y, z, bits);
                    REQUIRE(key < (HilbertKey(1) << (3 * bits)));
                    seen.insert(key);
                    const auto back = hilbert_decode(key, bits);
                    REQUIRE(back == std::array<std::uint32_t, 3>{x, y, z});
                }
        // Bijection: all keys distinct, hence the full key range is covered.
        CHECK(seen.size() == std::size_t(side) * side * side);
    }
}

TEST_CASE("round-trip holds for random samples at bits = 21") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20000; ++t) {
        const std::uint32_t x = std::uint32_t(rng()) & ((1u << 21) - 1);
        const std::uint32_t y = std::uint32_t(rng()) & ((1u << 21) - 1);
        const std::uint32_t z = std::uint32_t(rng()) & ((1u << 21) - 1);
        const HilbertKey key = hilbert_encode(x, y, z, 21);
        REQUIRE(hilbert_decode(key, 21) == std::array<std::uint32_t, 3>{x, y, z});
    }
}

TEST_CASE("consecutive keys are face-adjacent cells, exhaustively for bits <= 3") {
    for (int bits = 1; bits <= 3; ++bits) {
        const HilbertKey max_key = HilbertKey(1) << (3 * bits);
        auto prev = hilbert_decode(0, bits);
        for (HilbertKey key = 1; key < max_key; ++key) {
            const auto cur = hilbert_decode(key, bits);
            int moved = 0;
            for (int d = 0; d < 3; ++d) {
                const std::int64_t delta =
                    std::int64_t(cur[std::size_t(d)]) - std::int64_t(prev[std::size_t(d)]);
                if (delta != 0) {
                    ++moved;
                    REQUIRE(std::abs(delta) == 1);
                }
            }
            REQUIRE(moved == 1);
            prev = cur;
        }
    }
}

TEST_CASE("sort_by_sfc basics") {
    SimulationBox box({0, 0, 0}, {1, 1, 1});

    SUBCASE("single particle") {
        ParticleSet ps;
        ps.resize(1);
        ps.x[0] = ps.y[0] = ps.z[0] = 0.5;
        ps.h[0] = 0.1;
        const SfcOrder order = sort_by_sfc(ps, box);
        CHECK(order.perm == std::vector<std::uint32_t>{0});
    }

    SUBCASE("already ordered input gives the identity permutation") {
        // Walk the bits=1 curve corners in curve order.
        ParticleSet ps;
        ps.resize(8);
        for (HilbertKey k = 0; k < 8; ++k) {
            const auto c = hilbert_decode(k, 1);
            ps.x[k] = 0.25 + 0.5 * c[0];
            ps.y[k] = 0.25 + 0.5 * c[1];
            ps.z[k] = 0.25 + 0.5 * c[2];
            ps.h[k] = 0.1;
        }
        const SfcOrder order = sort_by_sfc(ps, box);
        for (std::uint32_t i = 0; i < 8; ++i) CHECK(order.perm[i] == i);
    }

    SUBCASE("random set: keys non-decreasing, permutation bijective") {
        std::mt19937_64 rng(11);
        ParticleSet ps;
        ps.resize(1000);
        for (std::size_t i = 0; i < 1000; ++i) {
            ps.x[i] = double(rng() >> 11) * 0x1.0p-53;
            ps.y[i] = double(rng() >> 11) * 0x1.0p-53;
            ps.z[i] = double(rng() >> 11) * 0x1.0p-53;
            ps.h[i] = 0.05;
        }
        const SfcOrder order = sort_by_sfc(ps, box);
        std::vector<bool> hit(1000, false);
        for (std::size_t k = 0; k < 1000; ++k) {
            if (k > 0) CHECK(order.keys[k - 1] <= order.keys[k]);
            CHECK(!hit[order.perm[k]]);
            hit[order.perm[k]] = true;
        }
        const ParticleSet sorted = apply_sfc_order(ps, order);
        for (std::size_t k = 0; k < 1000; ++k) {
            CHECK(sorted.x[k] == ps.x[order.perm[k]]);
            CHECK(sfc_key(sorted.pos(k), box, order.bits) == order.keys[k]);
        }
    }

    SUBCASE("ties break by original index") {
        ParticleSet ps;
        ps.resize(3);
        for (std::size_t i = 0; i < 3; ++i) {
            ps.x[i] = ps.y[i] = ps.z[i] = 0.5;  // identical keys
            ps.h[i] = 0.1;
        }
        const SfcOrder order = sort_by_sfc(ps, box);
        CHECK(order.perm == std::vector<std::uint32_t>{0, 1, 2});
    }
}

TEST_CASE("periodic wrap feeds the key grid") {
    SimulationBox box({0, 0, 0}, {1, 1, 1}, {true, true, true});
    // On a periodic axis the upper face is the same cell as the lower face.
    CHECK(sfc_key({1.0, 0.0, 0.0}, box, 4) == sfc_key({0.0, 0.0, 0.0}, box, 4));
    SimulationBox open({0, 0, 0}, {1, 1, 1});
    CHECK(grid_coords({1.0, 0.0, 0.0}, open, 4)[0] == 15);
}
