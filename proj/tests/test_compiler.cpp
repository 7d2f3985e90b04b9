#include <random>

#include "doctest.h"
#include "wmclab/compiler.hpp"
#include "wmclab/diagram_io.hpp"
#include "wmclab/errors.hpp"
#include "wmclab/oracle.hpp"

using namespace wmclab;

namespace {

std::vector<CompileConfig> all_configs() {
    std::vector<CompileConfig> cfgs;
    for (Heuristic h : {Heuristic::first_unset, Heuristic::max_occurrence})
        for (NegationMode m : {NegationMode::direct_dnf, NegationMode::negate_to_cnf})
            for (bool cache : {true, false}) {
                CompileConfig c;
                c.heuristic = h;
                c.negation_mode = m;
                c.cache = cache;
                cfgs.push_back(c);
            }
    return cfgs;
}

MonotoneDnf random_monotone_dnf(std::mt19937& rng) {
    std::uniform_int_distribution<int> nvars(1, 8), nterms(1, 6), tsize(1, 3);
    int v = nvars(rng);
    std::vector<std::vector<VarId>> terms;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        std::vector<VarId> term;
        int s = tsize(rng);
        for (int j = 0; j < s; ++j)
            term.push_back(VarId::sym("x" + std::to_string(
                               std::uniform_int_distribution<int>(0, v - 1)(rng))));
        std::sort(term.begin(), term.end());
        term.erase(std::unique(term.begin(), term.end()), term.end());
        terms.push_back(std::move(term));
    }
    return MonotoneDnf(std::move(terms));
}

} // namespace

TEST_CASE("single variable compiles to one decision over the two sinks") {
    MonotoneDnf f = MonotoneDnf::parse("X\n");
    CompileResult r = compile(f);
    CHECK(r.diagram.size() == 3);
    CHECK(r.stats.nodes_created == 3);
    CHECK(r.stats.decisions == 1);
    const Node& root = r.diagram.nodes()[r.diagram.root()];
    CHECK(root.kind == NodeKind::decision);
    CHECK(r.diagram.vars()[root.var] == VarId::sym("X"));
    CHECK(validate(r.diagram).diagram_class == DiagramClass::fbdd);
    WeightMap w;
    w.set(VarId::sym("X"), parse_rational("3/10"));
    CHECK(wmc(r.diagram, w)[0] == parse_rational("3/10"));
}

TEST_CASE("disconnected terms split into components at the root") {
    MonotoneDnf f = MonotoneDnf::parse("X Y\nZ W\n");
    WeightMap w; // uniform 1/2
    Rational expect = brute_force_wmc(f, w);

    SUBCASE("direct mode joins parts with a decomposable Or") {
        CompileResult r = compile(f);
        CHECK(r.stats.component_splits == 1);
        CHECK(r.diagram.size() == 7); // two 2-decision chains + 2 sinks + Or
        const Node& root = r.diagram.nodes()[r.diagram.root()];
        CHECK(root.kind == NodeKind::op_or);
        CHECK(validate(r.diagram).diagram_class == DiagramClass::dldd);
        CHECK(wmc(r.diagram, w)[0] == expect);
    }

    SUBCASE("negated mode compiles the complement with And splits under a root Not") {
        CompileConfig cfg;
        cfg.negation_mode = NegationMode::negate_to_cnf;
        CompileResult r = compile(f, cfg);
        const Node& root = r.diagram.nodes()[r.diagram.root()];
        CHECK(root.kind == NodeKind::op_not);
        bool has_and = false;
        for (const Node& n : r.diagram.nodes()) has_and |= n.kind == NodeKind::op_and;
        CHECK(has_and);
        CHECK(validate(r.diagram).diagram_class == DiagramClass::dldd);
        CHECK(wmc(r.diagram, w)[0] == expect);
    }
}

TEST_CASE("chain query at domain size one counts to 3/8") {
    MonotoneDnf h1 = ground_hk(1, 1);
    WeightMap w;
    for (const CompileConfig& cfg : all_configs()) {
        CAPTURE(heuristic_name(cfg.heuristic));
        CAPTURE(negation_mode_name(cfg.negation_mode));
        CompileResult r = compile(h1, cfg);
        CHECK(wmc(r.diagram, w)[0] == parse_rational("3/8"));
        CHECK(validate(r.diagram).valid());
    }
}

TEST_CASE("compiled diagrams agree with the enumeration oracle") {
    std::vector<std::pair<std::string, CompositeLineage>> inputs;
    auto add_dnf = [&](const std::string& name, const MonotoneDnf& f) {
        inputs.emplace_back(name,
                            CompositeLineage(CombinatorFn::or_of(1), std::vector<MonotoneDnf>{f}));
    };
    add_dnf("H_1 n=2", ground_hk(1, 2));
    add_dnf("H_2 n=1", ground_hk(2, 1));
    add_dnf("H_0 n=2", ground_h0(2));
    QuerySpec qw = QuerySpec::parse("k=3\ncnf: 0 2 | 0 3 | 1 3\n");
    inputs.emplace_back("Q_W n=1", qw.lineage(1));
    inputs.emplace_back("Q_W n=2", qw.lineage(2));

    WeightMap w;
    w.set(VarId::r(0), parse_rational("1/3"));
    w.set(VarId::t(1), parse_rational("2/7"));

    for (const auto& [name, psi] : inputs) {
        Rational expect = brute_force_wmc(psi, w);
        for (const CompileConfig& cfg : all_configs()) {
            CAPTURE(name);
            CAPTURE(heuristic_name(cfg.heuristic));
            CAPTURE(negation_mode_name(cfg.negation_mode));
            CAPTURE(cfg.cache);
            CompileResult r = compile(psi, cfg);
            CHECK(validate(r.diagram).valid());
            CHECK(wmc(r.diagram, w)[0] == expect);
            CHECK(r.diagram.size() == r.stats.nodes_created);
        }
    }
}

TEST_CASE("randomized monotone formulas compile to oracle-equal diagrams") {
    std::mt19937 rng(20240817);
    WeightMap w;
    w.set(VarId::sym("x0"), parse_rational("1/3"));
    w.set(VarId::sym("x3"), parse_rational("4/5"));
    for (int trial = 0; trial < 40; ++trial) {
        MonotoneDnf f = random_monotone_dnf(rng);
        if (f.is_constant()) continue;
        Rational expect = brute_force_wmc(f, w);
        for (const CompileConfig& cfg : all_configs()) {
            CAPTURE(trial);
            CAPTURE(f.str());
            CompileResult r = compile(f, cfg);
            CHECK(validate(r.diagram).valid());
            CHECK(wmc(r.diagram, w)[0] == expect);
        }
    }
}

TEST_CASE("compilation is deterministic for a fixed config") {
    QuerySpec qw = QuerySpec::parse("k=3\ncnf: 0 2 | 0 3 | 1 3\n");
    CompositeLineage psi = qw.lineage(2);
    for (Heuristic h : {Heuristic::first_unset, Heuristic::max_occurrence}) {
        CompileConfig cfg;
        cfg.heuristic = h;
        std::string first = print_mdd(compile(psi, cfg).diagram);
        std::string second = print_mdd(compile(psi, cfg).diagram);
        CHECK(first == second);
    }
}

TEST_CASE("cache changes sizes but never results") {
    MonotoneDnf h2 = ground_hk(2, 2);
    WeightMap w;
    CompileConfig with_cache, without_cache;
    without_cache.cache = false;
    CompileResult a = compile(h2, with_cache);
    CompileResult b = compile(h2, without_cache);
    CHECK(a.stats.cache_hits > 0);
    CHECK(b.stats.cache_hits == 0);
    CHECK(b.stats.nodes_created >= a.stats.nodes_created);
    CHECK(wmc(a.diagram, w) == wmc(b.diagram, w));
}

TEST_CASE("exceeding the node budget aborts with partial statistics") {
    MonotoneDnf h2 = ground_hk(2, 3);
    CompileConfig cfg;
    cfg.node_budget = 20;
    try {
        compile(h2, cfg);
        FAIL("expected budget_error");
    } catch (const budget_error& e) {
        CHECK(e.code() == errc::budget_exhausted);
        CHECK(e.partial().nodes_created <= 20);
        CHECK(e.partial().nodes_created > 0);
        CHECK(e.partial().elapsed_seconds >= 0.0);
    }

    cfg.node_budget = 0;
    CHECK_THROWS_AS(compile(h2, cfg), error);
}

TEST_CASE("mode and heuristic names round-trip") {
    CHECK(parse_heuristic("first-unset") == Heuristic::first_unset);
    CHECK(parse_heuristic("max-occurrence") == Heuristic::max_occurrence);
    CHECK(parse_negation_mode("direct-dnf") == NegationMode::direct_dnf);
    CHECK(parse_negation_mode("negate-to-cnf") == NegationMode::negate_to_cnf);
    CHECK_THROWS_AS(parse_heuristic("dlis"), error);
    CHECK_THROWS_AS(parse_negation_mode("tseitin"), error);
    CHECK(std::string(heuristic_name(Heuristic::first_unset)) == "first-unset");
    CHECK(std::string(negation_mode_name(NegationMode::negate_to_cnf)) == "negate-to-cnf");
}
