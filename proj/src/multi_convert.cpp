#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wmclab/errors.hpp"
#include "wmclab/lineage.hpp"
#include "wmclab/transforms.hpp"

namespace wmclab {

Diagram fbdd_to_multioutput(const Diagram& f, const CombinatorFn& comb, int k, int n) {
    if (k < 1) raise(errc::unsupported, "fbdd_to_multioutput: chain length must be at least 1");
    if (n < 1) raise(errc::empty_domain, "fbdd_to_multioutput: empty domain");
    if (k + 1 > Diagram::max_outputs)
        raise(errc::too_large, "fbdd_to_multioutput: more outputs than diagrams support");
    if (comb.arity() != k + 1)
        raise(errc::unsupported, "fbdd_to_multioutput: combinator arity must be k+1");
    for (int l = 0; l <= k; ++l)
        if (!comb.depends_on(l))
            raise(errc::not_fully_dependent,
                  "fbdd_to_multioutput: combinator ignores argument " + std::to_string(l));
    if (!validate(f).within(DiagramClass::fbdd))
        raise(errc::invalid_diagram, "fbdd_to_multioutput: input does not validate as an FBDD");
    if (f.outputs() != 1)
        raise(errc::unsupported, "fbdd_to_multioutput: single-output diagrams only");

    const std::vector<VarId> family = hk_variable_table(k, n);
    auto family_slot = [&family](const VarId& v) -> std::uint32_t {
        auto it = std::lower_bound(family.begin(), family.end(), v);
        if (it == family.end() || *it != v)
            raise(errc::unsupported, "fbdd_to_multioutput: diagram tests a variable outside the instance");
        return static_cast<std::uint32_t>(it - family.begin());
    };
    for (const Node& node : f.nodes())
        if (node.kind == NodeKind::decision) family_slot(f.vars()[node.var]);

    // the conversion is only meaningful for a diagram that computes the
    // composition, so disagreements are hunted down first: exhaustively for
    // small instances, with fixed-seed sampling beyond
    {
        const CompositeLineage psi(comb, ground_hk_family(k, n));
        auto check = [&](const Assignment& th) {
            if (evaluate(f, th)[0] != psi.evaluate(th))
                raise(errc::wrong_function,
                      "fbdd_to_multioutput: diagram disagrees with the composition");
        };
        if (family.size() <= 16) {
            for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << family.size()); ++mask) {
                Assignment th;
                for (std::size_t i = 0; i < family.size(); ++i)
                    th.set(family[i], (mask >> i) & 1);
                check(th);
            }
        } else {
            std::mt19937_64 rng(0x77c1a5e5u);
            for (int trial = 0; trial < 512; ++trial) {
                Assignment th;
                std::uint64_t bits = 0;
                for (std::size_t i = 0; i < family.size(); ++i) {
                    if (i % 64 == 0) bits = rng();
                    th.set(family[i], (bits >> (i % 64)) & 1);
                }
                check(th);
            }
        }
    }

    std::vector<int> full(k + 1);
    std::iota(full.begin(), full.end(), 0);

    // below four domain elements no assignment keeps four independent
    // transversals, so the kept region is empty and one family OBDD is the
    // whole answer
    if (n < 4) return build_family_obdd(Assignment{}, full, k, n);

    // one representative root path per node, first writer wins
    std::vector<std::optional<Assignment>> rep(f.size());
    rep[f.root()] = Assignment{};
    for (std::uint32_t u = f.root() + 1; u-- > 0;) {
        if (!rep[u]) continue;
        const Node& node = f.nodes()[u];
        if (node.kind == NodeKind::noop) {
            if (!rep[node.a]) rep[node.a] = *rep[u];
        } else if (node.kind == NodeKind::decision) {
            for (bool value : {false, true}) {
                const std::uint32_t child = value ? node.b : node.a;
                if (rep[child]) continue;
                Assignment next = *rep[u];
                next.set(f.vars()[node.var], value);
                rep[child] = std::move(next);
            }
        }
    }

    // kept region: nodes whose representative assignment keeps at least
    // four independent transversals; their unit sets come from the cheap
    // characterization, which that threshold makes exact
    std::vector<char> in_v4(f.size(), 0);
    std::vector<std::vector<VarId>> units_k(f.size());
    for (std::uint32_t u = 0; u < f.size(); ++u) {
        if (!rep[u]) continue;
        if (find_transversals(*rep[u], k, n).max_independent >= 4) {
            in_v4[u] = 1;
            units_k[u] = hk_units(*rep[u], k, n);
        }
    }
    if (!in_v4[f.root()])
        raise(errc::internal_safety_violation,
              "fbdd_to_multioutput: root fell outside the kept region");

    // units chained on some path above each node; chains sit on kept edges
    // and test exactly the units the edge creates
    const std::size_t words = (family.size() + 63) / 64;
    std::vector<std::uint64_t> anc(f.size() * words, 0);
    auto anc_has = [&](std::uint32_t u, std::uint32_t slot) {
        return ((anc[u * words + slot / 64] >> (slot % 64)) & 1) != 0;
    };
    auto flow_edge = [&](std::uint32_t u, std::uint32_t child) {
        for (std::size_t w = 0; w < words; ++w) anc[child * words + w] |= anc[u * words + w];
        std::vector<VarId> created;
        std::set_difference(units_k[child].begin(), units_k[child].end(), units_k[u].begin(),
                            units_k[u].end(), std::back_inserter(created));
        for (const VarId& z : created) {
            const std::uint32_t s = family_slot(z);
            anc[child * words + s / 64] |= std::uint64_t{1} << (s % 64);
        }
    };
    // 0 = not kept / unreachable, 1 = kept decision, 2 = chained no-op,
    // 3 = replaced by an attachment, 4 = kept no-op
    std::vector<char> role(f.size(), 0);
    for (std::uint32_t u = f.root() + 1; u-- > 0;) {
        if (!rep[u] || !in_v4[u]) continue;
        const Node& node = f.nodes()[u];
        if (node.kind == NodeKind::noop) {
            role[u] = 4;
            for (std::size_t w = 0; w < words; ++w)
                anc[node.a * words + w] |= anc[u * words + w];
            continue;
        }
        if (node.kind != NodeKind::decision) {
            role[u] = 3; // sinks inside the kept region exit through an attachment
            continue;
        }
        const bool consumed = anc_has(u, family_slot(f.vars()[node.var]));
        if (consumed && in_v4[node.a]) {
            role[u] = 2;
            flow_edge(u, node.a);
        } else if (consumed || !in_v4[node.a] || !in_v4[node.b]) {
            role[u] = 3;
        } else {
            role[u] = 1;
            flow_edge(u, node.a);
            flow_edge(u, node.b);
        }
    }

    DiagramBuilder builder(family, k + 1);
    std::map<std::uint32_t, std::uint32_t> sink_cache;
    auto sink_of = [&](std::uint32_t label) {
        auto it = sink_cache.find(label);
        if (it == sink_cache.end()) it = sink_cache.emplace(label, builder.sink(label)).first;
        return it->second;
    };
    auto attach = [&](const Assignment& th) -> std::uint32_t {
        const Diagram sub = build_family_obdd(th, full, k, n);
        std::vector<std::uint32_t> m(sub.size(), 0);
        for (std::uint32_t i = 0; i < sub.size(); ++i) {
            const Node& nd = sub.nodes()[i];
            switch (nd.kind) {
            case NodeKind::sink:
                m[i] = sink_of(nd.label);
                break;
            case NodeKind::noop:
                m[i] = builder.add(Node::noop(m[nd.a]));
                break;
            case NodeKind::decision:
                m[i] = builder.decision(nd.var, m[nd.a], m[nd.b]);
                break;
            default:
                raise(errc::internal_safety_violation,
                      "fbdd_to_multioutput: operator node in a family obdd");
            }
        }
        return m[sub.root()];
    };
    auto theta_base = [&](std::uint32_t u) {
        Assignment th = *rep[u];
        for (const VarId& z : units_k[u]) th.set(z, false);
        return th;
    };
    // splice the edge's unit chain ahead of target; each chained unit that
    // fires exits into a family OBDD for the assignment at that point
    auto chain_edge = [&](std::uint32_t u, bool side, std::uint32_t target) -> std::uint32_t {
        const Node& node = f.nodes()[u];
        const std::uint32_t child = side ? node.b : node.a;
        std::vector<VarId> created;
        std::set_difference(units_k[child].begin(), units_k[child].end(), units_k[u].begin(),
                            units_k[u].end(), std::back_inserter(created));
        Assignment base = theta_base(u);
        const VarId w = f.vars()[node.var];
        if (!base.contains(w)) base.set(w, side);
        std::uint32_t h = target;
        for (std::size_t i = created.size(); i-- > 0;) {
            Assignment att = base;
            for (std::size_t j = 0; j < i; ++j) att.set(created[j], false);
            att.set(created[i], true);
            h = builder.decision(family_slot(created[i]), h, attach(att));
        }
        return h;
    };

    std::vector<std::uint32_t> map(f.size(), 0);
    for (std::uint32_t u = 0; u <= f.root(); ++u) {
        if (role[u] == 0) continue;
        const Node& node = f.nodes()[u];
        switch (role[u]) {
        case 1:
            map[u] = builder.decision(family_slot(f.vars()[node.var]),
                                      chain_edge(u, false, map[node.a]),
                                      chain_edge(u, true, map[node.b]));
            break;
        case 2:
            map[u] = builder.add(Node::noop(chain_edge(u, false, map[node.a])));
            break;
        case 3:
            map[u] = attach(theta_base(u));
            break;
        default:
            map[u] = builder.add(Node::noop(map[node.a]));
            break;
        }
    }

    return std::move(builder).finalize(map[f.root()]);
}

} // namespace wmclab
