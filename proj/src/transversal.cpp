#include <algorithm>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "wmclab/errors.hpp"
#include "wmclab/lineage.hpp"
#include "wmclab/transforms.hpp"

namespace wmclab {
namespace {

/// The chain term of member l at cell (i, j), in canonical variable order.
Term chain_term(int k, int l, int i, int j) {
    if (l == 0) return {VarId::r(i), VarId::s(1, i, j)};
    if (l == k) return {VarId::s(k, i, j), VarId::t(j)};
    return {VarId::s(l, i, j), VarId::s(l + 1, i, j)};
}

struct MatchResult {
    int size = 0;
    std::vector<VarId> cover;
};

/// Maximum matching of the pair set seen as a bipartite graph rows-columns
/// (augmenting paths), plus a minimum vertex cover recovered from the
/// alternating-reachability construction.  Every pair shares its row or its
/// column with a cover vertex, and cover size equals matching size.
MatchResult match_and_cover(const std::vector<std::pair<int, int>>& pairs, int n) {
    std::vector<std::vector<int>> adj(n + 1);
    for (const auto& [i, j] : pairs) adj[i].push_back(j);

    std::vector<int> row_match(n + 1, 0), col_match(n + 1, 0);
    std::vector<char> seen(n + 1, 0);
    std::function<bool(int)> augment = [&](int i) -> bool {
        for (int j : adj[i]) {
            if (seen[j]) continue;
            seen[j] = 1;
            if (col_match[j] == 0 || augment(col_match[j])) {
                col_match[j] = i;
                row_match[i] = j;
                return true;
            }
        }
        return false;
    };

    MatchResult out;
    for (int i = 1; i <= n; ++i) {
        if (adj[i].empty()) continue;
        std::fill(seen.begin(), seen.end(), 0);
        if (augment(i)) ++out.size;
    }

    // alternating reachability from unmatched rows: free edges forward,
    // matched edges back; cover = unreached rows + reached columns
    std::vector<char> row_reached(n + 1, 0), col_reached(n + 1, 0);
    std::function<void(int)> walk = [&](int i) {
        if (row_reached[i]) return;
        row_reached[i] = 1;
        for (int j : adj[i]) {
            if (j == row_match[i] || col_reached[j]) continue;
            col_reached[j] = 1;
            if (col_match[j] != 0) walk(col_match[j]);
        }
    };
    for (int i = 1; i <= n; ++i)
        if (!adj[i].empty() && row_match[i] == 0) walk(i);

    for (int i = 1; i <= n; ++i)
        if (!adj[i].empty() && !row_reached[i]) out.cover.push_back(VarId::r(i));
    for (int j = 1; j <= n; ++j)
        if (col_reached[j]) out.cover.push_back(VarId::t(j));
    return out;
}

} // namespace

bool TransversalSet::contains(int i, int j) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::pair<int, int>{i, j});
}

std::vector<VarId> hk_variable_table(int k, int n) {
    std::vector<VarId> vars;
    vars.reserve(static_cast<std::size_t>(k) * n * n + 2 * n);
    for (int i = 1; i <= n; ++i) vars.push_back(VarId::r(i));
    for (int l = 1; l <= k; ++l)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) vars.push_back(VarId::s(l, i, j));
    for (int j = 1; j <= n; ++j) vars.push_back(VarId::t(j));
    return vars;
}

TransversalSet find_transversals(const Assignment& theta, int k, int n) {
    if (k < 1) raise(errc::unsupported, "find_transversals: chain length must be at least 1");
    if (n < 1) raise(errc::empty_domain, "find_transversals: empty domain");

    // a cell survives when its chain term is a prime implicant of every
    // restricted member, i.e. a term of each canonical minimal form
    std::vector<std::set<Term>> member_terms(k + 1);
    for (int l = 0; l <= k; ++l) {
        const MonotoneDnf m = restrict_dnf(ground_hk_member(k, l, n), theta);
        if (m.is_constant()) continue; // constant members keep no chain term
        for (const Term& t : m.terms()) member_terms[l].insert(t);
    }

    TransversalSet out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            bool all = true;
            for (int l = 0; l <= k && all; ++l)
                all = member_terms[l].count(chain_term(k, l, i, j)) != 0;
            if (all) out.pairs.emplace_back(i, j);
        }

    MatchResult m = match_and_cover(out.pairs, n);
    out.max_independent = m.size;
    out.cover = std::move(m.cover);
    return out;
}

std::vector<VarId> hk_units(const Assignment& theta, int k, int n) {
    const TransversalSet ts = find_transversals(theta, k, n);
    if (ts.pairs.empty()) return {}; // already transversal-free: nothing qualifies

    if (ts.max_independent >= 4) {
        // with four independent transversals the units are exactly the unit
        // implicants of the restricted members
        std::set<VarId> out;
        for (int l = 0; l <= k; ++l) {
            const MonotoneDnf m = restrict_dnf(ground_hk_member(k, l, n), theta);
            if (m.is_constant()) continue;
            for (const Term& t : m.terms())
                if (t.size() == 1) out.insert(t.front());
        }
        return {out.begin(), out.end()};
    }

    // definitional fallback: binding the variable to 1 must remove every
    // surviving cell
    std::vector<VarId> out;
    for (const VarId& v : hk_variable_table(k, n)) {
        if (theta.contains(v)) continue;
        Assignment bound = theta;
        bound.set(v, true);
        if (find_transversals(bound, k, n).pairs.empty()) out.push_back(v);
    }
    return out;
}

} // namespace wmclab
