#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sfcnl {

/// Thrown on invalid arguments or malformed inputs.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a neighbor-list build precondition fails.
struct BuildError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed encoded streams; carries the byte offset of the failure.
struct DecodeError : std::runtime_error {
    std::size_t byte_offset;
    DecodeError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          byte_offset(offset) {}
};

struct Vec3 {
    double x = 0, y = 0, z = 0;

    double& operator[](int d) { return d == 0 ? x : d == 1 ? y : z; }
    double operator[](int d) const { return d == 0 ? x : d == 1 ? y : z; }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
};

/// Rectangular simulation domain with per-axis periodicity.
struct SimulationBox {
    Vec3 lo;
    Vec3 hi;
    std::array<bool, 3> periodic{false, false, false};

    SimulationBox() = default;
    SimulationBox(Vec3 lo_, Vec3 hi_, std::array<bool, 3> per = {false, false, false})
        : lo(lo_), hi(hi_), periodic(per) {
        for (int d = 0; d < 3; ++d)
            if (!(hi[d] > lo[d])) throw InputError("SimulationBox: hi must exceed lo on every axis");
    }

    double length(int d) const { return hi[d] - lo[d]; }

    /// Wraps a position into [lo, hi) on periodic axes; non-periodic axes pass through.
    Vec3 wrap(Vec3 p) const {
        for (int d = 0; d < 3; ++d) {
            if (!periodic[d]) continue;
            const double L = length(d);
            p[d] -= L * std::floor((p[d] - lo[d]) / L);
            if (p[d] >= hi[d]) p[d] = lo[d];  // guard against floor rounding at the upper face
        }
        return p;
    }
};

/// Minimum-image displacement a - b and its squared norm.
inline std::pair<Vec3, double> periodic_delta(const Vec3& a, const Vec3& b, const SimulationBox& box) {
    Vec3 d = a - b;
    for (int ax = 0; ax < 3; ++ax) {
        if (!box.periodic[ax]) continue;
        const double L = box.length(ax);
        d[ax] -= L * std::rint(d[ax] / L);
    }
    return {d, d.norm2()};
}

/// Axis-aligned bounding box. Default-constructed boxes are empty.
struct Aabb {
    Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    Vec3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};

    bool empty() const { return lo.x > hi.x; }

    void extend(const Vec3& p) {
        for (int d = 0; d < 3; ++d) {
            lo[d] = std::min(lo[d], p[d]);
            hi[d] = std::max(hi[d], p[d]);
        }
    }

    void extend(const Aabb& o) {
        if (o.empty()) return;
        extend(o.lo);
        extend(o.hi);
    }

    bool contains(const Vec3& p) const {
        return !empty() && p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
               p.z <= hi.z;
    }
};

namespace detail {

inline double interval_gap(double p, double lo, double hi) {
    if (p < lo) return lo - p;
    if (p > hi) return p - hi;
    return 0.0;
}

inline double periodic_axis_gap(double p, double lo, double hi, double L, bool periodic) {
    double g = interval_gap(p, lo, hi);
    if (periodic) {
        g = std::min(g, interval_gap(p - L, lo, hi));
        g = std::min(g, interval_gap(p + L, lo, hi));
    }
    return g;
}

inline double interval_interval_gap(double alo, double ahi, double blo, double bhi) {
    const double g = std::max(alo, blo) - std::min(ahi, bhi);
    return g > 0 ? g : 0.0;
}

}  // namespace detail

/// Minimum squared distance from a point to an Aabb with per-axis minimum-image wrapping.
inline double min_dist_sq(const Vec3& p, const Aabb& aabb, const SimulationBox& box) {
    if (aabb.empty()) return std::numeric_limits<double>::infinity();
    double s = 0;
    for (int d = 0; d < 3; ++d) {
        const double g =
            detail::periodic_axis_gap(p[d], aabb.lo[d], aabb.hi[d], box.length(d), box.periodic[d]);
        s += g * g;
    }
    return s;
}

/// Minimum squared distance between two Aabbs under per-axis minimum-image wrapping.
inline double aabb_dist_sq(const Aabb& a, const Aabb& b, const SimulationBox& box) {
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    double s = 0;
    for (int d = 0; d < 3; ++d) {
        double g = detail::interval_interval_gap(a.lo[d], a.hi[d], b.lo[d], b.hi[d]);
        if (box.periodic[d]) {
            const double L = box.length(d);
            g = std::min(g, detail::interval_interval_gap(a.lo[d], a.hi[d], b.lo[d] - L, b.hi[d] - L));
            g = std::min(g, detail::interval_interval_gap(a.lo[d], a.hi[d], b.lo[d] + L, b.hi[d] + L));
        }
        s += g * g;
    }
    return s;
}

/// Structure-of-arrays particle data: positions, interaction radii, and named payload fields.
struct ParticleSet {
    std::vector<double> x, y, z;
    std::vector<double> h;
    std::map<std::string, std::vector<double>> fields;

    std::size_t size() const { return x.size(); }

    Vec3 pos(std::size_t i) const { return {x[i], y[i], z[i]}; }

    void resize(std::size_t n) {
        x.resize(n);
        y.resize(n);
        z.resize(n);
        h.resize(n);
        for (auto& [name, v] : fields) v.resize(n);
    }

    std::vector<double>& add_field(const std::string& name) {
        auto [it, inserted] = fields.emplace(name, std::vector<double>(size(), 0.0));
        if (!inserted) throw InputError("ParticleSet: field already exists: " + name);
        return it->second;
    }

    const std::vector<double>& field(const std::string& name) const {
        auto it = fields.find(name);
        if (it == fields.end()) throw InputError("ParticleSet: no such field: " + name);
        return it->second;
    }

    bool has_field(const std::string& name) const { return fields.count(name) != 0; }
};

/// Checks the ParticleSet invariants against a box; throws InputError on violation.
inline void validate(const ParticleSet& ps, const SimulationBox& box) {
    const std::size_t n = ps.size();
    if (ps.y.size() != n || ps.z.size() != n || ps.h.size() != n)
        throw InputError("ParticleSet: array length mismatch");
    for (const auto& [name, v] : ps.fields)
        if (v.size() != n) throw InputError("ParticleSet: field length mismatch: " + name);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(ps.h[i] > 0)) throw InputError("ParticleSet: h must be positive");
        for (int d = 0; d < 3; ++d) {
            const double c = ps.pos(i)[d];
            if (!std::isfinite(c)) throw InputError("ParticleSet: non-finite coordinate");
            if (c < box.lo[d] || c > box.hi[d])
                throw InputError("ParticleSet: position outside box (wrap first)");
        }
    }
}

}  // namespace sfcnl
