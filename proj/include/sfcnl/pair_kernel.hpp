#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "sfcnl/core.hpp"
#include "sfcnl/simd.hpp"

namespace sfcnl {

/// How a pair contribution maps onto the j-side particle in half-list mode:
/// even outputs mirror unchanged, odd outputs flip sign, none are i-side only.
enum class Symmetry : std::uint8_t { even, odd, none };

enum class Reduction : std::uint8_t { sum, min, max };

struct OutputSpec {
    const char* name;
    Symmetry symmetry = Symmetry::even;
    Reduction reduction = Reduction::sum;
};

template <class Real>
struct RVec {
    Real x = 0, y = 0, z = 0;
};

/// Everything a pair function sees for one (i, j) evaluation. dx is the
/// minimum-image displacement pos_i - pos_j.
template <class Real>
struct PairArgs {
    std::size_t i = 0, j = 0;
    RVec<Real> pos_i, pos_j, dx;
    Real d2 = 0;
    Real h_i = 0, h_j = 0;
};

template <class Real>
constexpr Real reduction_identity(Reduction r) {
    switch (r) {
        case Reduction::sum: return Real(0);
        case Reduction::min: return std::numeric_limits<Real>::infinity();
        default: return -std::numeric_limits<Real>::infinity();
    }
}

template <class Real>
constexpr Real reduce_op(Reduction r, Real acc, Real v) {
    switch (r) {
        case Reduction::sum: return acc + v;
        case Reduction::min: return acc < v ? acc : v;
        default: return acc > v ? acc : v;
    }
}

/// Pair kernel assembled from user lambdas. The pair function must be pure;
/// it receives the PairArgs plus the bound input fields of both particles and
/// returns one contribution per output.
template <class Real, std::size_t NIn, std::size_t NOut, class Fn, class Post = std::nullptr_t>
struct BasicPairKernel {
    static constexpr std::size_t num_inputs = NIn;
    static constexpr std::size_t num_outputs = NOut;
    static constexpr bool has_postamble = !std::is_same_v<Post, std::nullptr_t>;

    std::array<const char*, NIn> inputs;
    std::array<OutputSpec, NOut> outputs;
    Fn fn;
    Post post;

    std::array<Real, NOut> pair(const PairArgs<Real>& args, const std::array<Real, NIn>& in_i,
                                const std::array<Real, NIn>& in_j) const {
        return fn(args, in_i, in_j);
    }

    void postamble(std::size_t i, std::array<Real, NOut>& vals, std::uint32_t count) const {
        if constexpr (has_postamble) post(i, vals, count);
    }
};

template <class Real, std::size_t NIn, std::size_t NOut, class Fn>
auto make_pair_kernel(std::array<const char*, NIn> inputs, std::array<OutputSpec, NOut> outputs,
                      Fn fn) {
    return BasicPairKernel<Real, NIn, NOut, Fn>{inputs, outputs, std::move(fn), nullptr};
}

template <class Real, std::size_t NIn, std::size_t NOut, class Fn, class Post>
auto make_pair_kernel(std::array<const char*, NIn> inputs, std::array<OutputSpec, NOut> outputs,
                      Fn fn, Post post) {
    return BasicPairKernel<Real, NIn, NOut, Fn, Post>{inputs, outputs, std::move(fn), std::move(post)};
}

/// Pass configuration. query_scale maps stored radii to interaction cutoffs and
/// must not exceed the store's build_radius_scale.
struct PassConfig {
    double query_scale = 1.0;
    Isa isa = Isa::automatic;
    int threads = 1;

    PassConfig() = default;
    PassConfig(double qs, Isa isa_ = Isa::automatic, int threads_ = 1)
        : query_scale(qs), isa(isa_), threads(threads_) {
        if (!(query_scale >= 0)) throw InputError("PassConfig: query_scale must be >= 0");
    }
};

/// Named per-particle output arrays of a neighbor reduction, plus the exact
/// neighbor count within the query cutoff.
template <class Real>
struct ReduceResult {
    std::vector<std::string> names;
    std::vector<std::vector<Real>> outputs;
    std::vector<std::uint32_t> neighbor_count;

    const std::vector<Real>& output(const std::string& name) const {
        for (std::size_t o = 0; o < names.size(); ++o)
            if (names[o] == name) return outputs[o];
        throw InputError("ReduceResult: no such output: " + name);
    }
};

}  // namespace sfcnl
