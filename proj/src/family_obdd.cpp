#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "wmclab/errors.hpp"
#include "wmclab/lineage.hpp"
#include "wmclab/transforms.hpp"

namespace wmclab {
namespace {

constexpr std::uint64_t kAnchorBit = std::uint64_t{1} << 32;
constexpr std::uint64_t kPrevBit = std::uint64_t{1} << 33;

/// A two-variable term fires its member at the later of its two positions;
/// the earlier value is carried either in the prev bit (immediately
/// preceding position) or in the anchor bit (the R/T opening the block).
struct Completion {
    std::uint32_t member_bit;
    bool from_prev;
};

struct Position {
    std::uint32_t slot;
    std::uint32_t single_mask = 0;
    std::vector<Completion> completions;
    bool sets_anchor = false;
    bool keep_anchor = false;
    bool keep_prev = false;
};

struct Level {
    std::vector<std::uint64_t> states;
    std::vector<std::array<std::uint32_t, 2>> next;
};

} // namespace

Diagram build_family_obdd(const Assignment& theta, const std::vector<int>& subset_in, int k, int n,
                          int t_cap, FamilyObddStats* stats) {
    if (k < 1) raise(errc::unsupported, "build_family_obdd: chain length must be at least 1");
    if (n < 1) raise(errc::empty_domain, "build_family_obdd: empty domain");
    if (k + 1 > Diagram::max_outputs)
        raise(errc::too_large, "build_family_obdd: more outputs than diagrams support");
    if (t_cap < 0) t_cap = 0;

    std::vector<int> subset = subset_in;
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    for (int l : subset)
        if (l < 0 || l > k) raise(errc::unsupported, "build_family_obdd: member index out of range");

    const std::vector<VarId> vars = hk_variable_table(k, n);
    auto slot_of = [&vars](const VarId& v) {
        return static_cast<std::uint32_t>(std::lower_bound(vars.begin(), vars.end(), v) -
                                          vars.begin());
    };

    if (stats) *stats = FamilyObddStats{};

    // only the full chain can keep an R connected to a T, so only then can
    // an exhaustive prefix over a minimum transversal cover be needed
    std::vector<VarId> cover;
    std::size_t branch_t = 0;
    if (static_cast<int>(subset.size()) == k + 1) {
        const TransversalSet ts = find_transversals(theta, k, n);
        if (ts.max_independent > t_cap)
            raise(errc::not_transversal_free,
                  "build_family_obdd: " + std::to_string(ts.max_independent) +
                      " independent transversals exceed the cap of " + std::to_string(t_cap));
        cover = ts.cover;
        branch_t = cover.size();
    }

    DiagramBuilder builder(vars, k + 1);
    std::map<std::uint32_t, std::uint32_t> sink_cache;
    auto sink_of = [&](std::uint32_t label) {
        auto it = sink_cache.find(label);
        if (it == sink_cache.end()) it = sink_cache.emplace(label, builder.sink(label)).first;
        return it->second;
    };

    // one left-to-right level automaton for a transversal-free leaf
    auto automaton = [&](const std::vector<MonotoneDnf>& mem,
                         const std::vector<std::vector<std::vector<std::uint32_t>>>& term_slots,
                         const std::vector<char>& present,
                         const std::vector<char>& column_side) -> std::uint32_t {
        std::uint32_t fired0 = 0;
        for (std::size_t idx = 0; idx < mem.size(); ++idx)
            if (mem[idx].is_true()) fired0 |= std::uint32_t{1} << subset[idx];

        // row side lists each surviving R(i) then its row's S levels
        // cell-major; the column side lists T(j) first, then column j's S
        // levels, so every two-variable term completes at its later
        // position from the immediately preceding one or from the block
        // anchor
        std::vector<std::uint32_t> order;
        for (int i = 1; i <= n; ++i) {
            const std::uint32_t rs = slot_of(VarId::r(i));
            if (present[rs] && !column_side[rs]) order.push_back(rs);
            for (int j = 1; j <= n; ++j)
                for (int l = 1; l <= k; ++l) {
                    const std::uint32_t ss = slot_of(VarId::s(l, i, j));
                    if (present[ss] && !column_side[ss]) order.push_back(ss);
                }
        }
        for (int j = 1; j <= n; ++j) {
            const std::uint32_t ts = slot_of(VarId::t(j));
            if (present[ts] && column_side[ts]) order.push_back(ts);
            for (int i = 1; i <= n; ++i)
                for (int l = 1; l <= k; ++l) {
                    const std::uint32_t ss = slot_of(VarId::s(l, i, j));
                    if (present[ss] && column_side[ss]) order.push_back(ss);
                }
        }
        const std::size_t count = order.size();
        if (count == 0) return sink_of(fired0);

        std::vector<std::uint32_t> pos_of(vars.size(), 0);
        std::vector<Position> positions(count);
        for (std::uint32_t p = 0; p < count; ++p) {
            pos_of[order[p]] = p;
            positions[p].slot = order[p];
            const VarKind kind = vars[order[p]].kind;
            positions[p].sets_anchor = kind == VarKind::R || kind == VarKind::T;
        }

        for (std::size_t idx = 0; idx < mem.size(); ++idx) {
            const std::uint32_t bit = std::uint32_t{1} << subset[idx];
            for (const std::vector<std::uint32_t>& slots : term_slots[idx]) {
                if (slots.size() == 1) {
                    positions[pos_of[slots[0]]].single_mask |= bit;
                    continue;
                }
                if (slots.size() != 2)
                    raise(errc::internal_safety_violation,
                          "build_family_obdd: member term wider than two variables");
                std::uint32_t p0 = pos_of[slots[0]], p1 = pos_of[slots[1]];
                if (p0 > p1) std::swap(p0, p1);
                Completion c{bit, p0 + 1 == p1};
                if (!c.from_prev) {
                    const VarKind kind = vars[order[p0]].kind;
                    if (kind != VarKind::R && kind != VarKind::T)
                        raise(errc::internal_safety_violation,
                              "build_family_obdd: variable order broke term adjacency");
                }
                positions[p1].completions.push_back(c);
            }
        }

        // liveness of the carried bits, swept backwards; a dead bit is
        // blanked so states that differ only in history collapse
        bool need_anchor = false;
        for (std::size_t p = count; p-- > 0;) {
            positions[p].keep_anchor = need_anchor;
            bool consumes = false;
            for (const Completion& c : positions[p].completions) consumes |= !c.from_prev;
            need_anchor = consumes || (!positions[p].sets_anchor && need_anchor);
            bool prev_used = false;
            if (p + 1 < count)
                for (const Completion& c : positions[p + 1].completions) prev_used |= c.from_prev;
            positions[p].keep_prev = prev_used;
        }

        std::vector<Level> levels(count + 1);
        levels[0].states.push_back(fired0);
        std::unordered_map<std::uint64_t, std::uint32_t> intern;
        for (std::size_t p = 0; p < count; ++p) {
            Level& cur = levels[p];
            cur.next.resize(cur.states.size());
            intern.clear();
            const Position& pos = positions[p];
            for (std::size_t si = 0; si < cur.states.size(); ++si) {
                const std::uint64_t s = cur.states[si];
                const auto fired = static_cast<std::uint32_t>(s);
                const bool anchor = (s & kAnchorBit) != 0, prev = (s & kPrevBit) != 0;
                for (int v = 0; v < 2; ++v) {
                    std::uint32_t nf = fired | (v ? pos.single_mask : 0);
                    if (v)
                        for (const Completion& c : pos.completions)
                            if (c.from_prev ? prev : anchor) nf |= c.member_bit;
                    const bool na = pos.keep_anchor && (pos.sets_anchor ? v != 0 : anchor);
                    const bool np = pos.keep_prev && v != 0;
                    const std::uint64_t packed =
                        nf | (na ? kAnchorBit : 0) | (np ? kPrevBit : 0);
                    auto [it, fresh] =
                        intern.emplace(packed, static_cast<std::uint32_t>(levels[p + 1].states.size()));
                    if (fresh) levels[p + 1].states.push_back(packed);
                    cur.next[si][v] = it->second;
                }
            }
            if (stats)
                stats->max_level_width = std::max(stats->max_level_width, cur.states.size());
        }
        if (stats)
            stats->max_level_width = std::max(stats->max_level_width, levels[count].states.size());

        std::vector<std::uint32_t> ids;
        ids.reserve(levels[count].states.size());
        for (std::uint64_t s : levels[count].states) ids.push_back(sink_of(static_cast<std::uint32_t>(s)));
        for (std::size_t p = count; p-- > 0;) {
            std::vector<std::uint32_t> up(levels[p].states.size());
            for (std::size_t si = 0; si < levels[p].states.size(); ++si)
                up[si] = builder.decision(positions[p].slot, ids[levels[p].next[si][0]],
                                          ids[levels[p].next[si][1]]);
            ids = std::move(up);
        }
        return ids[0];
    };

    std::function<std::uint32_t(const Assignment&, int)> build = [&](const Assignment& th,
                                                                     int depth) -> std::uint32_t {
        std::vector<MonotoneDnf> mem;
        mem.reserve(subset.size());
        for (int l : subset) mem.push_back(restrict_dnf(ground_hk_member(k, l, n), th));

        std::vector<std::vector<std::vector<std::uint32_t>>> term_slots(mem.size());
        std::vector<char> present(vars.size(), 0);
        std::vector<std::uint32_t> uf(vars.size());
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&uf](std::uint32_t x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        for (std::size_t idx = 0; idx < mem.size(); ++idx) {
            if (mem[idx].is_constant()) continue;
            for (const Term& t : mem[idx].terms()) {
                std::vector<std::uint32_t> slots;
                slots.reserve(t.size());
                for (const VarId& v : t) {
                    slots.push_back(slot_of(v));
                    present[slots.back()] = 1;
                }
                if (slots.size() == 2) uf[find(slots[0])] = find(slots[1]);
                term_slots[idx].push_back(std::move(slots));
            }
        }

        std::vector<char> root_has_r(vars.size(), 0), root_has_t(vars.size(), 0);
        for (std::uint32_t s = 0; s < vars.size(); ++s) {
            if (!present[s]) continue;
            const std::uint32_t r = find(s);
            if (vars[s].kind == VarKind::R) root_has_r[r] = 1;
            if (vars[s].kind == VarKind::T) root_has_t[r] = 1;
        }
        bool mixed = false;
        std::vector<char> column_side(vars.size(), 0);
        for (std::uint32_t s = 0; s < vars.size(); ++s) {
            if (!present[s]) continue;
            const std::uint32_t r = find(s);
            mixed |= root_has_r[r] && root_has_t[r];
            column_side[s] = root_has_t[r];
        }

        if (!mixed) {
            if (stats) stats->branch_depth = std::max(stats->branch_depth, depth);
            return automaton(mem, term_slots, present, column_side);
        }
        if (depth >= static_cast<int>(cover.size()))
            raise(errc::internal_safety_violation,
                  "build_family_obdd: transversals survived the cover prefix");
        const VarId& v = cover[depth];
        Assignment lo = th, hi = th;
        lo.set(v, false);
        hi.set(v, true);
        const std::uint32_t a = build(lo, depth + 1);
        const std::uint32_t b = build(hi, depth + 1);
        return builder.decision(slot_of(v), a, b);
    };

    const std::uint32_t root = build(theta, 0);
    Diagram out = std::move(builder).finalize(root);

    // size guarantee: 64 * k * 2^(k+t) * n^2 nodes, t the number of
    // independent transversals tested away up front
    mpz_class bound = 64;
    bound *= k;
    bound *= n;
    bound *= n;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(k) + branch_t);
    if (mpz_class(static_cast<unsigned long>(out.size())) > bound)
        raise(errc::internal_safety_violation, "build_family_obdd: output exceeded its size guarantee");
    return out;
}

} // namespace wmclab
