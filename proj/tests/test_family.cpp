#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "wmclab/compiler.hpp"
#include "wmclab/errors.hpp"
#include "wmclab/oracle.hpp"
#include "wmclab/transforms.hpp"

using namespace wmclab;

namespace {

Assignment assignment_from_mask(const std::vector<VarId>& vars, std::uint64_t mask) {
    Assignment theta;
    for (std::size_t i = 0; i < vars.size(); ++i) theta.set(vars[i], (mask >> i) & 1);
    return theta;
}

/// Maximum matching of the pair list by exhaustive search over rows.
int exhaustive_matching(const std::vector<std::pair<int, int>>& pairs, int n) {
    std::vector<std::vector<int>> rows(n + 1);
    for (auto [i, j] : pairs) rows[i].push_back(j);
    std::function<int(int, std::uint32_t)> go = [&](int i, std::uint32_t used) -> int {
        if (i > n) return 0;
        int best = go(i + 1, used);
        for (int j : rows[i])
            if (!(used >> j & 1)) best = std::max(best, 1 + go(i + 1, used | (1u << j)));
        return best;
    };
    return go(1, 0);
}

/// The defining property of an H_k-unit, computed directly.
std::vector<VarId> definitional_units(const Assignment& theta, int k, int n) {
    if (find_transversals(theta, k, n).pairs.empty()) return {};
    std::vector<VarId> out;
    for (const VarId& v : hk_variable_table(k, n)) {
        if (theta.contains(v)) continue;
        Assignment bumped = theta;
        bumped.set(v, true);
        if (find_transversals(bumped, k, n).pairs.empty()) out.push_back(v);
    }
    return out;
}

Diagram to_fbdd(const CompositeLineage& psi) {
    Diagram d = compile(psi).diagram;
    if (validate(d).diagram_class == DiagramClass::fbdd) return d;
    return dldd_to_fbdd(d);
}

Diagram to_fbdd(const MonotoneDnf& phi) {
    return to_fbdd(CompositeLineage(CombinatorFn::or_of(1), std::vector<MonotoneDnf>{phi}));
}

} // namespace

TEST_CASE("an empty assignment leaves the full transversal grid") {
    TransversalSet ts = find_transversals(Assignment{}, 1, 3);
    CHECK(ts.pairs.size() == 9);
    CHECK(ts.max_independent == 3);
    CHECK(ts.cover.size() == 3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) CHECK(ts.contains(i, j));
}

TEST_CASE("a fully zeroed chain with one cell left open keeps one transversal") {
    const int k = 3, n = 7;
    std::set<VarId> open{VarId::r(3), VarId::s(1, 3, 7), VarId::s(2, 3, 7), VarId::s(3, 3, 7),
                         VarId::t(7)};
    Assignment theta;
    for (const VarId& v : hk_variable_table(k, n))
        if (!open.count(v)) theta.set(v, false);
    TransversalSet ts = find_transversals(theta, k, n);
    REQUIRE(ts.pairs.size() == 1);
    CHECK(ts.pairs[0] == std::pair<int, int>(3, 7));
    CHECK(ts.max_independent == 1);
    CHECK(ts.cover.size() == 1);
}

TEST_CASE("setting R(1) true removes every transversal in row 1") {
    Assignment theta;
    theta.set(VarId::r(1), true);
    TransversalSet ts = find_transversals(theta, 1, 3);
    CHECK(ts.pairs.size() == 6);
    for (int j = 1; j <= 3; ++j) CHECK_FALSE(ts.contains(1, j));
    CHECK(ts.max_independent == 2);
}

TEST_CASE("matching size and cover agree with exhaustive search") {
    std::mt19937 rng(0xfa3117);
    const int k = 1, n = 5;
    std::vector<VarId> table = hk_variable_table(k, n);
    for (int trial = 0; trial < 60; ++trial) {
        Assignment theta;
        int bindings = std::uniform_int_distribution<int>(0, 8)(rng);
        for (int b = 0; b < bindings; ++b) {
            const VarId& v = table[std::uniform_int_distribution<std::size_t>(
                0, table.size() - 1)(rng)];
            if (!theta.contains(v))
                theta.set(v, std::uniform_int_distribution<int>(0, 3)(rng) == 0);
        }
        TransversalSet ts = find_transversals(theta, k, n);
        CAPTURE(trial);
        CAPTURE(theta.str());
        CHECK(ts.max_independent == exhaustive_matching(ts.pairs, n));
        CHECK(ts.cover.size() == static_cast<std::size_t>(ts.max_independent));

        for (const VarId& w : ts.cover) {
            CHECK((w.kind == VarKind::R || w.kind == VarKind::T));
            for (bool val : {false, true}) {
                if (theta.contains(w)) continue;
                Assignment bound = theta;
                bound.set(w, val);
                TransversalSet after = find_transversals(bound, k, n);
                for (auto [i, j] : after.pairs) {
                    CHECK((w.kind == VarKind::R ? i != static_cast<int>(w.row)
                                                : j != static_cast<int>(w.col)));
                }
            }
        }
    }
}

TEST_CASE("binding one variable moves the transversal count predictably") {
    std::mt19937 rng(0xfa3118);
    const int k = 2, n = 4;
    std::vector<VarId> table = hk_variable_table(k, n);
    for (int trial = 0; trial < 40; ++trial) {
        Assignment theta;
        int bindings = std::uniform_int_distribution<int>(0, 6)(rng);
        for (int b = 0; b < bindings; ++b) {
            const VarId& v = table[std::uniform_int_distribution<std::size_t>(
                0, table.size() - 1)(rng)];
            if (!theta.contains(v))
                theta.set(v, std::uniform_int_distribution<int>(0, 3)(rng) == 0);
        }
        int t = find_transversals(theta, k, n).max_independent;
        const VarId& w =
            table[std::uniform_int_distribution<std::size_t>(0, table.size() - 1)(rng)];
        if (theta.contains(w)) continue;
        Assignment zero = theta, one = theta;
        zero.set(w, false);
        one.set(w, true);
        int t0 = find_transversals(zero, k, n).max_independent;
        int t1 = find_transversals(one, k, n).max_independent;
        CAPTURE(theta.str());
        CAPTURE(w.str());
        CHECK((t0 == t || t0 == t - 1));
        CHECK((t1 == t || t1 == t - 1 || t1 == 0));
    }
}

TEST_CASE("hk_units is empty for the unrestricted family") {
    CHECK(hk_units(Assignment{}, 2, 4).empty());
    CHECK(hk_units(Assignment{}, 1, 3).empty());
}

TEST_CASE("hk_units matches the definitional computation on both paths") {
    // >= 4 independent transversals: the union-of-member-units shortcut
    Assignment theta;
    theta.set(VarId::s(1, 1, 1), true);
    const int k = 1, n = 5;
    REQUIRE(find_transversals(theta, k, n).max_independent >= 4);
    std::vector<VarId> fast = hk_units(theta, k, n);
    CHECK(std::binary_search(fast.begin(), fast.end(), VarId::r(1)));
    CHECK(fast == definitional_units(theta, k, n));
    for (const VarId& z : fast) {
        Assignment bumped = theta;
        bumped.set(z, true);
        CHECK(find_transversals(bumped, k, n).pairs.empty());
    }

    // fewer than 4: the definitional scan is used directly
    std::mt19937 rng(0xfa3119);
    for (int trial = 0; trial < 25; ++trial) {
        Assignment th;
        std::vector<VarId> table = hk_variable_table(2, 3);
        int bindings = std::uniform_int_distribution<int>(0, 10)(rng);
        for (int b = 0; b < bindings; ++b) {
            const VarId& v = table[std::uniform_int_distribution<std::size_t>(
                0, table.size() - 1)(rng)];
            if (!th.contains(v)) th.set(v, std::uniform_int_distribution<int>(0, 4)(rng) == 0);
        }
        CAPTURE(th.str());
        CHECK(hk_units(th, 2, 3) == definitional_units(th, 2, 3));
    }
}

TEST_CASE("single-member family OBDD matches the member and zeroes the rest") {
    FamilyObddStats stats;
    Diagram d = build_family_obdd(Assignment{}, {0}, 1, 2, 8, &stats);
    CHECK(validate(d).diagram_class == DiagramClass::fbdd);
    CHECK(d.outputs() == 2);
    CHECK(stats.max_level_width <= 16);
    CHECK(stats.branch_depth == 0);

    MonotoneDnf member = ground_hk_member(1, 0, 2);
    std::vector<VarId> table = hk_variable_table(1, 2);
    for (std::uint64_t mask = 0; mask < (1u << table.size()); ++mask) {
        Assignment theta = assignment_from_mask(table, mask);
        std::vector<bool> out = evaluate(d, theta);
        REQUIRE(out.size() == 2);
        CHECK(out[0] == member.evaluate(theta));
        CHECK_FALSE(out[1]);
    }

    WeightMap w;
    CHECK(wmc(d, w)[0] == brute_force_wmc(member, w));
    CHECK(wmc(d, w)[1] == Rational(0));
}

TEST_CASE("full-subset family OBDD branches over a transversal cover") {
    for (auto [k, n] : {std::pair<int, int>{1, 2}, {2, 2}}) {
        CAPTURE(k);
        CAPTURE(n);
        std::vector<int> full(k + 1);
        for (int l = 0; l <= k; ++l) full[l] = l;
        FamilyObddStats stats;
        Diagram d = build_family_obdd(Assignment{}, full, k, n, 8, &stats);
        CHECK(validate(d).diagram_class == DiagramClass::fbdd);
        CHECK(stats.branch_depth == n); // t = n for the empty assignment
        CHECK(stats.max_level_width <= (1u << (k + 3)));

        std::vector<MonotoneDnf> members = ground_hk_family(k, n);
        std::vector<VarId> table = hk_variable_table(k, n);
        REQUIRE(table.size() <= 12);
        for (std::uint64_t mask = 0; mask < (1u << table.size()); ++mask) {
            Assignment theta = assignment_from_mask(table, mask);
            std::vector<bool> out = evaluate(d, theta);
            for (int l = 0; l <= k; ++l)
                if (out[l] != members[l].evaluate(theta)) {
                    CAPTURE(mask);
                    CAPTURE(l);
                    REQUIRE(out[l] == members[l].evaluate(theta));
                }
        }
    }
}

TEST_CASE("restricted assignments shrink the family OBDD to the open cells") {
    // everything zeroed except one chain: a single transversal remains and
    // the construction branches on exactly one cover variable
    const int k = 1, n = 2;
    std::set<VarId> open{VarId::r(1), VarId::s(1, 1, 1), VarId::t(1)};
    Assignment theta;
    for (const VarId& v : hk_variable_table(k, n))
        if (!open.count(v)) theta.set(v, false);
    REQUIRE(find_transversals(theta, k, n).max_independent == 1);

    FamilyObddStats stats;
    Diagram d = build_family_obdd(theta, {0, 1}, k, n, 8, &stats);
    CHECK(stats.branch_depth == 1);
    const Node& root = d.nodes()[d.root()];
    REQUIRE(root.kind == NodeKind::decision);
    VarId rv = d.vars()[root.var];
    CHECK((rv == VarId::r(1) || rv == VarId::t(1)));

    std::vector<MonotoneDnf> members = ground_hk_family(k, n);
    std::vector<VarId> free(open.begin(), open.end());
    for (std::uint64_t mask = 0; mask < (1u << free.size()); ++mask) {
        Assignment full = theta;
        for (std::size_t i = 0; i < free.size(); ++i) full.set(free[i], (mask >> i) & 1);
        std::vector<bool> out = evaluate(d, full);
        for (int l = 0; l <= k; ++l) CHECK(out[l] == members[l].evaluate(full));
    }
}

TEST_CASE("too many surviving transversals are refused") {
    try {
        build_family_obdd(Assignment{}, {0, 1}, 1, 10, 8);
        FAIL("expected not_transversal_free");
    } catch (const error& e) {
        CHECK(e.code() == errc::not_transversal_free);
    }
}

TEST_CASE("family OBDD rejects malformed requests") {
    CHECK_THROWS_AS(build_family_obdd(Assignment{}, {0}, 0, 2), error);
    CHECK_THROWS_AS(build_family_obdd(Assignment{}, {0}, 1, 0), error);
    CHECK_THROWS_AS(build_family_obdd(Assignment{}, {0, 3}, 1, 2), error);
}

TEST_CASE("multi-output conversion recovers the members from an OR diagram") {
    const int k = 1, n = 2;
    Diagram f = to_fbdd(ground_hk(k, n));
    Diagram multi = fbdd_to_multioutput(f, CombinatorFn::or_of(k + 1), k, n);
    CHECK(validate(multi).diagram_class == DiagramClass::fbdd);
    CHECK(multi.outputs() == k + 1);

    std::vector<MonotoneDnf> members = ground_hk_family(k, n);
    std::vector<VarId> table = hk_variable_table(k, n);
    for (std::uint64_t mask = 0; mask < (1u << table.size()); ++mask) {
        Assignment theta = assignment_from_mask(table, mask);
        std::vector<bool> out = evaluate(multi, theta);
        for (int l = 0; l <= k; ++l) CHECK(out[l] == members[l].evaluate(theta));
    }

    Diagram joined = project_outputs_or(multi, {0, 1});
    for (std::uint64_t mask = 0; mask < (1u << table.size()); ++mask) {
        Assignment theta = assignment_from_mask(table, mask);
        CHECK(evaluate(joined, theta)[0] == evaluate(f, theta)[0]);
    }
}

TEST_CASE("multi-output conversion handles a four-member combinator") {
    QuerySpec qw = QuerySpec::parse("k=3\ncnf: 0 2 | 0 3 | 1 3\n");
    const int k = qw.k();

    SUBCASE("domain size one, checked exhaustively") {
        CompositeLineage psi = qw.lineage(1);
        Diagram f = to_fbdd(psi);
        Diagram multi = fbdd_to_multioutput(f, qw.combinator(), k, 1);
        CHECK(validate(multi).diagram_class == DiagramClass::fbdd);
        std::vector<MonotoneDnf> members = ground_hk_family(k, 1);
        std::vector<VarId> table = hk_variable_table(k, 1);
        REQUIRE(table.size() == 5);
        for (std::uint64_t mask = 0; mask < (1u << table.size()); ++mask) {
            Assignment theta = assignment_from_mask(table, mask);
            std::vector<bool> out = evaluate(multi, theta);
            for (int l = 0; l <= k; ++l) CHECK(out[l] == members[l].evaluate(theta));
        }
    }

    SUBCASE("domain size two, checked on random assignments") {
        CompositeLineage psi = qw.lineage(2);
        Diagram f = to_fbdd(psi);
        Diagram multi = fbdd_to_multioutput(f, qw.combinator(), k, 2);
        CHECK(validate(multi).diagram_class == DiagramClass::fbdd);
        std::vector<MonotoneDnf> members = ground_hk_family(k, 2);
        std::vector<VarId> table = hk_variable_table(k, 2);
        std::mt19937_64 rng(0xfa311a);
        for (int trial = 0; trial < 3000; ++trial) {
            Assignment theta = assignment_from_mask(table, rng());
            std::vector<bool> out = evaluate(multi, theta);
            for (int l = 0; l <= k; ++l) CHECK(out[l] == members[l].evaluate(theta));
        }
    }
}

TEST_CASE("multi-output conversion keeps the kept-region machinery honest") {
    // n >= 4 engages representative assignments, unit chains and boundary
    // attachments instead of the small-domain fallback
    auto check_conversion = [](const Diagram& f, int k, int n) {
        Diagram multi = fbdd_to_multioutput(f, CombinatorFn::or_of(k + 1), k, n);
        CHECK(validate(multi).diagram_class == DiagramClass::fbdd);
        CHECK(multi.outputs() == k + 1);

        std::vector<MonotoneDnf> members = ground_hk_family(k, n);
        std::vector<VarId> table = hk_variable_table(k, n);
        std::mt19937_64 rng(0xfa311b);
        for (int trial = 0; trial < 2000; ++trial) {
            std::uint64_t mask = rng() & ((1ull << table.size()) - 1);
            Assignment theta = assignment_from_mask(table, mask);
            std::vector<bool> out = evaluate(multi, theta);
            for (int l = 0; l <= k; ++l) {
                if (out[l] != members[l].evaluate(theta)) {
                    CAPTURE(trial);
                    CAPTURE(l);
                    CAPTURE(theta.str());
                    REQUIRE(out[l] == members[l].evaluate(theta));
                }
            }
        }

        // frozen multiplicative constant for the size bound C * k * 2^k * n^3 * N
        const std::size_t C = 256;
        CHECK(multi.size() <= C * k * (1u << k) * static_cast<std::size_t>(n) * n * n * f.size());
    };

    SUBCASE("cover-first diagram at the V4 threshold") {
        const int k = 1, n = 4;
        Diagram fam = build_family_obdd(Assignment{}, {0, 1}, k, n);
        check_conversion(project_outputs_or(fam, {0, 1}), k, n);
    }

    SUBCASE("cell-first diagram drives unit chains inside the kept region") {
        // rooting the diagram at S_1(1,1) makes its 1-edge create the units
        // R(1), T(1) while both sides keep at least four transversals
        const int k = 1, n = 5;
        std::vector<VarId> table = hk_variable_table(k, n);
        Assignment lo_theta, hi_theta;
        lo_theta.set(VarId::s(1, 1, 1), false);
        hi_theta.set(VarId::s(1, 1, 1), true);
        Diagram lo = project_outputs_or(build_family_obdd(lo_theta, {0, 1}, k, n), {0, 1});
        Diagram hi = project_outputs_or(build_family_obdd(hi_theta, {0, 1}, k, n), {0, 1});

        DiagramBuilder b(table, 1);
        auto splice = [&b](const Diagram& d) {
            std::vector<std::uint32_t> map(d.size());
            for (std::uint32_t i = 0; i < d.size(); ++i) {
                const Node& nd = d.nodes()[i];
                Node copy = nd;
                if (nd.kind != NodeKind::sink) {
                    copy.a = map[nd.a];
                    if (nd.kind == NodeKind::decision || nd.is_binary()) copy.b = map[nd.b];
                }
                map[i] = b.add(copy);
            }
            return map[d.root()];
        };
        std::uint32_t lo_root = splice(lo), hi_root = splice(hi);
        std::uint32_t slot = static_cast<std::uint32_t>(
            std::lower_bound(table.begin(), table.end(), VarId::s(1, 1, 1)) - table.begin());
        Diagram f = std::move(b).finalize(b.decision(slot, lo_root, hi_root));
        REQUIRE(validate(f).diagram_class == DiagramClass::fbdd);
        check_conversion(f, k, n);
    }
}

TEST_CASE("multi-output conversion rejects bad combinators and functions") {
    const int k = 1, n = 2;
    Diagram f = to_fbdd(ground_hk(k, n));
    try {
        fbdd_to_multioutput(f, CombinatorFn::from_clauses(2, {{0}}), k, n);
        FAIL("expected not_fully_dependent");
    } catch (const error& e) {
        CHECK(e.code() == errc::not_fully_dependent);
    }
    CHECK_THROWS_AS(fbdd_to_multioutput(f, CombinatorFn::or_of(3), k, n), error);

    Diagram wrong = to_fbdd(ground_hk_member(k, 0, n));
    try {
        fbdd_to_multioutput(wrong, CombinatorFn::or_of(k + 1), k, n);
        FAIL("expected wrong_function");
    } catch (const error& e) {
        CHECK(e.code() == errc::wrong_function);
    }
}

TEST_CASE("dichotomy classification reproduces the worked examples") {
    CombinatorFn hard = CombinatorFn::from_clauses(9, {{0, 1}, {1, 7}, {2, 3}});
    DichotomyClass c1 = classify_dichotomy(hard, 3);
    CHECK(c1.hard);

    CombinatorFn easy = CombinatorFn::from_clauses(5, {{0, 4}, {2, 1}});
    DichotomyClass c2 = classify_dichotomy(easy, 1);
    CHECK_FALSE(c2.hard);
    CHECK(c2.witness_index == 0);

    CombinatorFn easy1 =
        CombinatorFn::from_clauses(13, {{0}, {1, 9}, {1, 11}, {2, 3, 4, 5}});
    DichotomyClass c3 = classify_dichotomy(easy1, 5);
    CHECK_FALSE(c3.hard);
    CHECK(c3.witness_index == 1);
}

TEST_CASE("easy dichotomy queries build oracle-exact layered FBDDs") {
    CombinatorFn easy = CombinatorFn::from_clauses(5, {{0, 4}, {2, 1}});
    QuerySpec spec(easy, 1);
    REQUIRE(spec.is_dichotomy());
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        Diagram d = build_dichotomy_fbdd(easy, 1, n);
        CHECK(validate(d).diagram_class == DiagramClass::fbdd);
        CompositeLineage psi = spec.lineage(n);
        std::vector<VarId> table = hk_variable_table(1, n);
        REQUIRE(table.size() <= 15);
        for (std::uint64_t mask = 0; mask < (1u << table.size()); ++mask) {
            Assignment theta = assignment_from_mask(table, mask);
            if (evaluate(d, theta)[0] != psi.evaluate(theta)) {
                CAPTURE(mask);
                REQUIRE(evaluate(d, theta)[0] == psi.evaluate(theta));
            }
        }
    }
}

TEST_CASE("dichotomy layers cascade block by block") {
    CombinatorFn easy = CombinatorFn::from_clauses(5, {{0, 4}, {2, 1}});
    const int k = 1, n = 2;
    Diagram d = build_dichotomy_fbdd(easy, k, n);
    // the all-zero path walks the R block, each S block, then the T block
    std::vector<VarId> expected;
    for (int i = 1; i <= n; ++i) expected.push_back(VarId::r(i));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) expected.push_back(VarId::s(1, i, j));
    for (int j = 1; j <= n; ++j) expected.push_back(VarId::t(j));

    std::vector<VarId> seen;
    std::uint32_t u = d.root();
    while (d.nodes()[u].kind != NodeKind::sink) {
        const Node& nd = d.nodes()[u];
        if (nd.kind == NodeKind::decision) seen.push_back(d.vars()[nd.var]);
        u = nd.a;
    }
    CHECK(seen == expected);
    CHECK(d.nodes()[u].label == 0); // g is false on the empty database
}

TEST_CASE("hard dichotomy queries are refused") {
    CombinatorFn hard = CombinatorFn::from_clauses(9, {{0, 1}, {1, 7}, {2, 3}});
    try {
        build_dichotomy_fbdd(hard, 3, 2);
        FAIL("expected refusal");
    } catch (const error& e) {
        CHECK(e.code() == errc::refused);
    }
}
