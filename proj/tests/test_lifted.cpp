#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "wmclab/errors.hpp"
#include "wmclab/lifted.hpp"
#include "wmclab/lineage.hpp"
#include "wmclab/oracle.hpp"
#include "wmclab/transforms.hpp"

using namespace wmclab;

namespace {

CombinatorFn f_w() {
    return CombinatorFn::from_clauses(4, {{0, 2}, {0, 3}, {1, 3}});
}

CombinatorFn random_monotone(std::mt19937& rng, int arity) {
    std::vector<std::vector<int>> clauses;
    int count = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int c = 0; c < count; ++c) {
        std::vector<int> clause;
        int width = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < width; ++i)
            clause.push_back(std::uniform_int_distribution<int>(0, arity - 1)(rng));
        std::sort(clause.begin(), clause.end());
        clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
        clauses.push_back(std::move(clause));
    }
    return CombinatorFn::from_clauses(arity, clauses);
}

} // namespace

TEST_CASE("positive_cnf recovers prime implicates") {
    CHECK(positive_cnf(CombinatorFn::or_of(4)) ==
          std::vector<std::vector<int>>{{0, 1, 2, 3}});
    CHECK(positive_cnf(f_w()) == std::vector<std::vector<int>>{{0, 2}, {0, 3}, {1, 3}});
    CHECK(positive_cnf(CombinatorFn::and_of(2)) == std::vector<std::vector<int>>{{0}, {1}});

    CombinatorFn xor2 = CombinatorFn::from_truth_table(2, {false, true, true, false});
    CHECK_THROWS_AS(positive_cnf(xor2), error);

    std::mt19937 rng(0x11f7ed);
    for (int trial = 0; trial < 40; ++trial) {
        int arity = std::uniform_int_distribution<int>(2, 4)(rng);
        CombinatorFn f = random_monotone(rng, arity);
        if (f.is_constant()) continue;
        CombinatorFn back = CombinatorFn::from_clauses(arity, positive_cnf(f));
        CAPTURE(trial);
        CHECK(back == f);
    }
}

TEST_CASE("clause lattice closes under union and satisfies the recursion") {
    ClauseLattice single = build_lattice_and_mobius(2, {{0, 1}});
    CHECK(single.elements().size() == 2);
    CHECK(single.mobius(single.bottom()) == -1);
    CHECK(single.mobius(single.top()) == 1);

    ClauseLattice lat = build_lattice_and_mobius(4, positive_cnf(f_w()));
    CHECK(lat.elements().size() == 7);
    CHECK(lat.bottom() == 0b1111);
    CHECK(lat.mobius(lat.bottom()) == 0);
    CHECK(lat.mobius(0b0101) == -1); // {0,2}
    CHECK(lat.mobius(0b1001) == -1); // {0,3}
    CHECK(lat.mobius(0b1010) == -1); // {1,3}
    CHECK(lat.mobius(0b1101) == 1);  // {0,2,3}
    CHECK(lat.mobius(0b1011) == 1);  // {0,1,3}

    for (std::uint32_t u : lat.elements()) {
        for (std::uint32_t v : lat.elements())
            CHECK(std::count(lat.elements().begin(), lat.elements().end(), u | v) == 1);
        if (u == lat.top()) continue;
        std::int64_t sum = 0;
        for (std::uint32_t wse : lat.elements())
            if ((wse & u) == wse) sum += lat.mobius(wse);
        CHECK(sum == 0);
    }

    CHECK_THROWS_AS(build_lattice_and_mobius(2, {}), error);
    CHECK_THROWS_AS(build_lattice_and_mobius(2, {{}}), error);
    CHECK_THROWS_AS(build_lattice_and_mobius(2, {{5}}), error);
    CHECK_THROWS_AS(lat.mobius(0b0001), error);
}

TEST_CASE("safety matches the Moebius criterion") {
    CHECK_FALSE(is_safe(CombinatorFn::or_of(2)));
    CHECK_FALSE(is_safe(CombinatorFn::or_of(4)));
    CHECK(is_safe(f_w()));
    CHECK_FALSE(is_safe(CombinatorFn::from_clauses(1, {{0}})));
    CombinatorFn xor2 = CombinatorFn::from_truth_table(2, {false, true, true, false});
    CHECK_THROWS_AS(is_safe(xor2), error);
}

TEST_CASE("lifted evaluation reproduces the five-term expansion") {
    WeightMap w;
    LiftedResult res = lifted_wmc(f_w(), 3, 1, w);
    REQUIRE(res.terms.size() == 5);
    std::vector<std::vector<int>> members;
    std::vector<std::int64_t> mu;
    for (const LiftedTerm& t : res.terms) {
        members.push_back(t.members);
        mu.push_back(t.mobius);
    }
    CHECK(members == std::vector<std::vector<int>>{
                         {0, 2}, {0, 3}, {1, 3}, {0, 1, 3}, {0, 2, 3}});
    CHECK(mu == std::vector<std::int64_t>{-1, -1, -1, 1, 1});

    Rational expect = brute_force_wmc(CompositeLineage(f_w(), ground_hk_family(3, 1)), w);
    CHECK(res.probability == expect);

    ClauseLattice lat = build_lattice_and_mobius(4, positive_cnf(f_w()));
    mpz_class bound = 64 * mpz_class(static_cast<unsigned long>(lat.elements().size())) * 3 * 8;
    CHECK(mpz_class(static_cast<unsigned long>(res.obdd_nodes)) <= bound);
}

TEST_CASE("lifted and enumerated counts agree at domain size two") {
    WeightMap w;
    w.set(VarId::r(1), parse_rational("1/3"));
    w.set(VarId::s(2, 1, 2), parse_rational("2/7"));
    w.set(VarId::t(2), parse_rational("9/11"));
    Rational expect = brute_force_wmc(CompositeLineage(f_w(), ground_hk_family(3, 2)), w);
    LiftedResult res = lifted_wmc(f_w(), 3, 2, w);
    CHECK(res.probability == expect);
}

TEST_CASE("all-ones weights make every safe query certain") {
    for (int n = 1; n <= 2; ++n) {
        WeightMap w;
        for (const VarId& v : hk_variable_table(3, n)) w.set(v, Rational(1));
        CHECK(lifted_wmc(f_w(), 3, n, w).probability == Rational(1));
    }
}

TEST_CASE("every safe combinator from small clause sets agrees with the oracle") {
    std::vector<std::vector<int>> pool;
    for (int a = 0; a < 4; ++a) {
        pool.push_back({a});
        for (int b = a + 1; b < 4; ++b) pool.push_back({a, b});
    }
    WeightMap w;
    w.set(VarId::r(1), parse_rational("1/5"));
    w.set(VarId::s(1, 2, 1), parse_rational("3/4"));
    int safe_seen = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i + 1; j < pool.size(); ++j)
            for (std::size_t l = j + 1; l < pool.size(); ++l) {
                CombinatorFn f =
                    CombinatorFn::from_clauses(4, {pool[i], pool[j], pool[l]});
                if (f.is_constant() || !is_safe(f)) continue;
                ++safe_seen;
                for (int n = 1; n <= 2; ++n) {
                    CAPTURE(i);
                    CAPTURE(j);
                    CAPTURE(l);
                    CAPTURE(n);
                    Rational expect =
                        brute_force_wmc(CompositeLineage(f, ground_hk_family(3, n)), w);
                    CHECK(lifted_wmc(f, 3, n, w).probability == expect);
                }
            }
    // the safe three-clause sets over four arguments are exactly the twelve
    // labelled paths on four vertices
    CHECK(safe_seen == 12);
}

TEST_CASE("unsafe and malformed lifted requests are rejected") {
    WeightMap w;
    try {
        lifted_wmc(CombinatorFn::or_of(2), 1, 2, w);
        FAIL("expected unsafe_query");
    } catch (const error& e) {
        CHECK(e.code() == errc::unsafe_query);
    }
    CHECK_THROWS_AS(lifted_wmc(f_w(), 2, 2, w), error);  // arity mismatch
    CHECK_THROWS_AS(lifted_wmc(f_w(), 3, 0, w), error);  // empty domain
}
