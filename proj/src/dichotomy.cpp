#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wmclab/errors.hpp"
#include "wmclab/transforms.hpp"

namespace wmclab {

DichotomyClass classify_dichotomy(const CombinatorFn& g, int k) {
    if (k < 1) raise(errc::unsupported, "classify_dichotomy: chain length must be at least 1");
    if (g.arity() != 2 * k + 3)
        raise(errc::unsupported, "classify_dichotomy: combinator arity must be 2k+3");
    const CombinatorFn all_there = g.fix_tail_to_ones(k + 1);
    for (int s = 0; s <= k; ++s)
        if (!all_there.depends_on(s)) return {false, s};
    return {true, -1};
}

Diagram build_dichotomy_fbdd(const CombinatorFn& g, int k, int n) {
    const DichotomyClass cls = classify_dichotomy(g, k);
    if (cls.hard)
        raise(errc::refused,
              "build_dichotomy_fbdd: the combinator depends on every member when all blocks "
              "are populated; no polynomial construction applies");
    if (n < 1) raise(errc::empty_domain, "build_dichotomy_fbdd: empty domain");
    if (k + 1 > Diagram::max_outputs)
        raise(errc::too_large, "build_dichotomy_fbdd: chain length too large");

    const std::vector<VarId> family = hk_variable_table(k, n);
    auto slot_of = [&family](const VarId& v) {
        return static_cast<std::uint32_t>(std::lower_bound(family.begin(), family.end(), v) -
                                          family.begin());
    };
    // block m holds the variables whose emptiness bit is b_m
    auto block = [&](int m) {
        std::vector<VarId> vars;
        if (m == 0)
            for (int i = 1; i <= n; ++i) vars.push_back(VarId::r(i));
        else if (m == k + 1)
            for (int j = 1; j <= n; ++j) vars.push_back(VarId::t(j));
        else
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) vars.push_back(VarId::s(m, i, j));
        return vars;
    };

    DiagramBuilder builder(family, 1);
    std::map<std::uint32_t, std::uint32_t> sink_cache;
    auto sink_of = [&](std::uint32_t label) {
        auto it = sink_cache.find(label);
        if (it == sink_cache.end()) it = sink_cache.emplace(label, builder.sink(label)).first;
        return it->second;
    };

    // family OBDD over the members an empty block has not already killed
    // (or minus the classification witness when every block fired), with
    // each sink folded through g; attachments are shared between exits that
    // agree on the surviving members' variables and the emptiness bits
    std::map<std::string, std::uint32_t> attach_cache;
    auto attach = [&](const Assignment& th, const std::vector<bool>& b) -> std::uint32_t {
        int first_zero = -1;
        for (int m = 0; m <= k + 1 && first_zero < 0; ++m)
            if (!b[m]) first_zero = m;
        std::vector<int> subset;
        for (int l = 0; l <= k; ++l) {
            if (first_zero >= 0 ? (l == first_zero - 1 || l == first_zero)
                                : l == cls.witness_index)
                continue;
            subset.push_back(l);
        }
        auto live = [&](const VarId& v) {
            for (int l : subset) {
                if (v.kind == VarKind::R && l == 0) return true;
                if (v.kind == VarKind::T && l == k) return true;
                if (v.kind == VarKind::S && (v.level == l || v.level == l + 1)) return true;
            }
            return false;
        };
        std::string key;
        for (int m = 0; m <= k + 1; ++m) key += b[m] ? '1' : '0';
        for (const auto& [v, val] : th)
            if (live(v)) key += (val ? '+' : '-') + v.str();
        if (auto hit = attach_cache.find(key); hit != attach_cache.end()) return hit->second;
        const Diagram fam = build_family_obdd(th, subset, k, n);
        std::vector<std::uint32_t> m(fam.size(), 0);
        for (std::uint32_t i = 0; i < fam.size(); ++i) {
            const Node& nd = fam.nodes()[i];
            switch (nd.kind) {
            case NodeKind::sink: {
                std::vector<bool> args(2 * k + 3, false);
                for (int l = 0; l <= k; ++l) args[l] = (nd.label >> l) & 1;
                for (int mm = 0; mm <= k + 1; ++mm) args[k + 1 + mm] = b[mm];
                m[i] = sink_of(g.eval(args) ? 1 : 0);
                break;
            }
            case NodeKind::noop:
                m[i] = builder.add(Node::noop(m[nd.a]));
                break;
            case NodeKind::decision:
                m[i] = builder.decision(nd.var, m[nd.a], m[nd.b]);
                break;
            default:
                raise(errc::internal_safety_violation,
                      "build_dichotomy_fbdd: operator node in a family obdd");
            }
        }
        attach_cache.emplace(key, m[fam.root()]);
        return m[fam.root()];
    };

    // layer m: cascade over block m; a 1 drops into the next layer with the
    // tested prefix bound, running off the end records the block as empty
    std::vector<bool> b;
    std::function<std::uint32_t(int, const Assignment&)> layer =
        [&](int m, const Assignment& th) -> std::uint32_t {
        if (m == k + 2) return attach(th, b);
        const std::vector<VarId> vars = block(m);
        Assignment all_zero = th;
        for (const VarId& v : vars) all_zero.set(v, false);
        b.push_back(false);
        std::uint32_t next = layer(m + 1, all_zero);
        b.back() = true;
        for (std::size_t p = vars.size(); p-- > 0;) {
            Assignment prefix = th;
            for (std::size_t q = 0; q < p; ++q) prefix.set(vars[q], false);
            prefix.set(vars[p], true);
            next = builder.decision(slot_of(vars[p]), next, layer(m + 1, prefix));
        }
        b.pop_back();
        return next;
    };

    return std::move(builder).finalize(layer(0, Assignment{}));
}

} // namespace wmclab
