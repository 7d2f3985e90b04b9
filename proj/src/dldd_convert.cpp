#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "wmclab/errors.hpp"
#include "wmclab/transforms.hpp"

namespace wmclab {
namespace {

struct ContinuationKey {
    std::uint32_t node, hi, lo;
    friend bool operator==(const ContinuationKey&, const ContinuationKey&) = default;
};

struct ContinuationKeyHash {
    std::size_t operator()(const ContinuationKey& k) const {
        std::uint64_t h = k.node;
        h = (h * 0x9e3779b97f4a7c15ULL) ^ k.hi;
        h = (h * 0x9e3779b97f4a7c15ULL) ^ k.lo;
        h ^= h >> 31;
        return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ULL);
    }
};

/// Comparison weights steering which operator child is expanded first.  For
/// small diagrams these are exact sub-DAG node counts (the lighter child of
/// every operator is the one copied, so halving arguments apply); larger
/// ones fall back to saturating expression-tree weights, which preserve
/// determinism and correctness and only influence output size.
std::vector<std::uint64_t> child_weights(const Diagram& d) {
    constexpr std::size_t exact_cap = 8192;
    constexpr std::uint64_t saturated = ~std::uint64_t{0} / 4;
    const auto& nodes = d.nodes();
    std::vector<std::uint64_t> weight(nodes.size(), 1);
    if (nodes.size() <= exact_cap) {
        const std::size_t words = (nodes.size() + 63) / 64;
        std::vector<std::uint64_t> reach(nodes.size() * words, 0);
        for (std::size_t u = 0; u < nodes.size(); ++u) {
            std::uint64_t* row = reach.data() + u * words;
            row[u / 64] |= std::uint64_t{1} << (u % 64);
            const Node& n = nodes[u];
            auto absorb = [&](std::uint32_t c) {
                const std::uint64_t* src = reach.data() + std::size_t{c} * words;
                for (std::size_t w = 0; w < words; ++w) row[w] |= src[w];
            };
            if (n.kind == NodeKind::noop || n.kind == NodeKind::op_not) {
                absorb(n.a);
            } else if (n.kind == NodeKind::decision || n.is_binary()) {
                absorb(n.a);
                absorb(n.b);
            }
            std::uint64_t total = 0;
            for (std::size_t w = 0; w < words; ++w) total += std::popcount(row[w]);
            weight[u] = total;
        }
    } else {
        for (std::size_t u = 0; u < nodes.size(); ++u) {
            const Node& n = nodes[u];
            std::uint64_t w = 1;
            if (n.kind == NodeKind::noop || n.kind == NodeKind::op_not) {
                w += weight[n.a];
            } else if (n.kind == NodeKind::decision || n.is_binary()) {
                w += weight[n.a];
                w += weight[n.b];
            }
            weight[u] = w < saturated ? w : saturated;
        }
    }
    return weight;
}

} // namespace

Diagram dldd_to_fbdd(const Diagram& d, std::uint64_t budget) {
    if (!validate(d).within(DiagramClass::dldd))
        raise(errc::invalid_diagram, "dldd_to_fbdd: input does not validate as a DLDD");
    if (d.outputs() != 1) raise(errc::unsupported, "dldd_to_fbdd: single-output diagrams only");

    const auto& nodes = d.nodes();
    const std::vector<std::uint64_t> weight = child_weights(d);

    DiagramBuilder builder(d.vars(), 1);
    const std::uint32_t one = builder.sink(1);
    const std::uint32_t zero = builder.sink(0);
    std::unordered_map<ContinuationKey, std::uint32_t, ContinuationKeyHash> memo;

    // rec(u, hi, lo): handle of a diagram that evaluates node u and then
    // continues into hi when it holds and into lo when it does not
    std::function<std::uint32_t(std::uint32_t, std::uint32_t, std::uint32_t)> rec =
        [&](std::uint32_t u, std::uint32_t hi, std::uint32_t lo) -> std::uint32_t {
        const Node& n = nodes[u];
        switch (n.kind) {
        case NodeKind::sink:
            return (n.label & 1) ? hi : lo;
        case NodeKind::noop:
            return rec(n.a, hi, lo);
        case NodeKind::op_not:
            return rec(n.a, lo, hi);
        default:
            break;
        }
        const ContinuationKey key{u, hi, lo};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::uint32_t made = 0;
        if (n.kind == NodeKind::decision) {
            const std::uint32_t next_lo = rec(n.a, hi, lo);
            const std::uint32_t next_hi = rec(n.b, hi, lo);
            if (builder.count() >= budget)
                raise(errc::budget_exhausted,
                      "dldd_to_fbdd: output exceeds the node budget of " + std::to_string(budget));
            made = builder.decision(n.var, next_lo, next_hi);
        } else {
            const bool a_light = weight[n.a] <= weight[n.b];
            const std::uint32_t light = a_light ? n.a : n.b;
            const std::uint32_t heavy = a_light ? n.b : n.a;
            switch (n.kind) {
            case NodeKind::op_and:
                made = rec(light, rec(heavy, hi, lo), lo);
                break;
            case NodeKind::op_or:
                made = rec(light, hi, rec(heavy, hi, lo));
                break;
            case NodeKind::op_xor:
                made = rec(light, rec(heavy, lo, hi), rec(heavy, hi, lo));
                break;
            default: // op_equiv
                made = rec(light, rec(heavy, hi, lo), rec(heavy, lo, hi));
                break;
            }
        }
        memo.emplace(key, made);
        return made;
    };

    Diagram out = std::move(builder).finalize(rec(d.root(), one, zero));

    // quasipolynomial guarantee: N * 2^(ceil(log2 N)^2) for an N-node input
    const std::uint64_t n_in = d.size();
    const unsigned e = n_in <= 1 ? 0 : std::bit_width(n_in - 1);
    mpz_class bound(static_cast<unsigned long>(n_in));
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(e) * e);
    if (mpz_class(static_cast<unsigned long>(out.size())) > bound)
        raise(errc::internal_safety_violation, "dldd_to_fbdd: output exceeded its size guarantee");
    return out;
}

} // namespace wmclab
