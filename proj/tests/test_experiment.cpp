#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "wmclab/experiment.hpp"

using namespace wmclab;

namespace {

QuerySpec q_w() {
    return QuerySpec(CombinatorFn::from_clauses(4, {{0, 2}, {0, 3}, {1, 3}}), 3);
}

QuerySpec h_1() { return QuerySpec(CombinatorFn::or_of(2), 1); }

std::vector<ExperimentRow> rows_for(const std::vector<ExperimentRow>& rows,
                                    const std::string& mode) {
    std::vector<ExperimentRow> out;
    for (const ExperimentRow& r : rows)
        if (r.mode == mode) out.push_back(r);
    return out;
}

} // namespace

TEST_CASE("safe query at domain size one reports three agreeing modes") {
    std::vector<ExperimentRow> rows = run_separation(q_w(), {1}, {});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].mode == "grounded");
    CHECK(rows[1].mode == "lifted");
    CHECK(rows[2].mode == "oracle");
    for (const ExperimentRow& r : rows) {
        CHECK(r.query_id == "k3[0 2|0 3|1 3]");
        CHECK(r.k == 3);
        CHECK(r.n == 1);
        CHECK(r.nodes >= 1);
        CHECK(r.probability == rows[0].probability);
        CHECK_FALSE(r.probability.empty());
        CHECK_FALSE(r.budget_hit);
    }
    CHECK(rows[0].heuristic == "first-unset");
    CHECK(rows[1].heuristic.empty());
    CHECK(rows[2].heuristic.empty());
}

TEST_CASE("unsafe queries produce no lifted rows and growing grounded sizes") {
    std::vector<ExperimentRow> rows = run_separation(h_1(), {2, 3, 4}, {});
    CHECK(rows_for(rows, "lifted").empty());
    std::vector<ExperimentRow> grounded = rows_for(rows, "grounded");
    REQUIRE(grounded.size() == 3);
    CHECK(grounded[0].nodes < grounded[1].nodes);
    CHECK(grounded[1].nodes < grounded[2].nodes);
    // 2n + n^2 variables: only n=2 (8) and n=3 (15) fit under the oracle cap
    std::vector<ExperimentRow> oracle = rows_for(rows, "oracle");
    REQUIRE(oracle.size() == 2);
    CHECK(oracle[0].n == 2);
    CHECK(oracle[1].n == 3);
    CHECK(oracle[0].probability == grounded[0].probability);
    CHECK(oracle[1].probability == grounded[1].probability);
}

TEST_CASE("budget exhaustion is a flagged row, not a failure") {
    ExperimentConfig cfg;
    cfg.compile.node_budget = 4;
    std::vector<ExperimentRow> rows = run_separation(h_1(), {3}, cfg);
    std::vector<ExperimentRow> grounded = rows_for(rows, "grounded");
    REQUIRE(grounded.size() == 1);
    CHECK(grounded[0].budget_hit);
    CHECK(grounded[0].probability.empty());
    std::vector<ExperimentRow> oracle = rows_for(rows, "oracle");
    REQUIRE(oracle.size() == 1);
    CHECK_FALSE(oracle[0].probability.empty());
}

TEST_CASE("csv has a stable schema and is deterministic apart from timing") {
    CHECK(experiment_csv({}) ==
          "query-id,k,n,mode,nodes,cache-hits,probability,elapsed-ms,heuristic,budget-hit\n");

    ExperimentConfig cfg;
    cfg.compile.heuristic = Heuristic::max_occurrence;
    std::vector<ExperimentRow> a = run_separation(q_w(), {1, 2}, cfg);
    std::vector<ExperimentRow> b = run_separation(q_w(), {1, 2}, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].query_id == b[i].query_id);
        CHECK(a[i].mode == b[i].mode);
        CHECK(a[i].nodes == b[i].nodes);
        CHECK(a[i].cache_hits == b[i].cache_hits);
        CHECK(a[i].probability == b[i].probability);
        CHECK(a[i].heuristic == b[i].heuristic);
        CHECK(a[i].budget_hit == b[i].budget_hit);
    }

    std::string csv = experiment_csv(a);
    std::istringstream lines(csv);
    std::string line;
    std::size_t line_count = 0;
    while (std::getline(lines, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 9);
        ++line_count;
    }
    CHECK(line_count == a.size() + 1);
    CHECK(csv.find("max-occurrence") != std::string::npos);
}
