#include "wmclab/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <utility>

#include "wmclab/errors.hpp"
#include "wmclab/lifted.hpp"
#include "wmclab/oracle.hpp"

namespace wmclab {

namespace {

std::string query_id(const QuerySpec& q) {
    std::string id = "k" + std::to_string(q.k()) + "[";
    const CombinatorFn& g = q.combinator();
    if (g.clauses()) {
        bool first_clause = true;
        for (const auto& clause : *g.clauses()) {
            if (!first_clause) id += '|';
            first_clause = false;
            bool first = true;
            for (int a : clause) {
                if (!first) id += ' ';
                first = false;
                id += std::to_string(a);
            }
        }
    } else {
        id += "tt:" + g.table_hex();
    }
    return id + "]";
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

} // namespace

std::vector<ExperimentRow> run_separation(const QuerySpec& query, const std::vector<int>& ns,
                                          const ExperimentConfig& cfg) {
    const std::string id = query_id(query);
    bool lifted_applicable = query.combinator().arity() == query.k() + 1;
    if (lifted_applicable) {
        try {
            lifted_applicable = is_safe(query.combinator());
        } catch (const error&) {
            lifted_applicable = false;
        }
    }

    std::vector<ExperimentRow> rows;
    for (int n : ns) {
        const CompositeLineage psi = query.lineage(n);
        std::string grounded_p;
        std::string lifted_p;

        ExperimentRow grounded;
        grounded.query_id = id;
        grounded.k = query.k();
        grounded.n = n;
        grounded.mode = "grounded";
        grounded.heuristic = heuristic_name(cfg.compile.heuristic);
        auto t0 = std::chrono::steady_clock::now();
        try {
            CompileResult r = compile(psi, cfg.compile);
            grounded.nodes = r.diagram.size();
            grounded.cache_hits = r.stats.cache_hits;
            grounded_p = rational_string(wmc(r.diagram, cfg.weights).at(0));
            grounded.probability = grounded_p;
        } catch (const budget_error& e) {
            grounded.budget_hit = true;
            grounded.nodes = e.partial().nodes_created;
            grounded.cache_hits = e.partial().cache_hits;
        }
        grounded.elapsed_ms = ms_since(t0);
        rows.push_back(std::move(grounded));

        if (lifted_applicable) {
            ExperimentRow lifted;
            lifted.query_id = id;
            lifted.k = query.k();
            lifted.n = n;
            lifted.mode = "lifted";
            t0 = std::chrono::steady_clock::now();
            LiftedResult lr = lifted_wmc(query.combinator(), query.k(), n, cfg.weights);
            lifted.nodes = lr.obdd_nodes;
            lifted_p = rational_string(lr.probability);
            lifted.probability = lifted_p;
            lifted.elapsed_ms = ms_since(t0);
            rows.push_back(std::move(lifted));
        }

        if (!grounded_p.empty() && !lifted_p.empty() && grounded_p != lifted_p)
            raise(errc::internal_safety_violation,
                  "grounded and lifted probabilities disagree at n=" + std::to_string(n) +
                      ": " + grounded_p + " vs " + lifted_p);

        const std::size_t var_count = psi.support().size();
        if (var_count <= static_cast<std::size_t>(cfg.oracle_cap)) {
            ExperimentRow oracle;
            oracle.query_id = id;
            oracle.k = query.k();
            oracle.n = n;
            oracle.mode = "oracle";
            t0 = std::chrono::steady_clock::now();
            Rational p = brute_force_wmc(psi, cfg.weights);
            oracle.nodes = std::uint64_t{1} << var_count;
            oracle.probability = rational_string(p);
            oracle.elapsed_ms = ms_since(t0);
            for (const std::string& other : {grounded_p, lifted_p})
                if (!other.empty() && other != oracle.probability)
                    raise(errc::internal_safety_violation,
                          "oracle disagrees at n=" + std::to_string(n) + ": " + other + " vs " +
                              oracle.probability);
            rows.push_back(std::move(oracle));
        }
    }
    return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
    std::string out = "query-id,k,n,mode,nodes,cache-hits,probability,elapsed-ms,heuristic,"
                      "budget-hit\n";
    for (const ExperimentRow& r : rows) {
        char ms[32];
        std::snprintf(ms, sizeof(ms), "%.3f", r.elapsed_ms);
        out += r.query_id + ',' + std::to_string(r.k) + ',' + std::to_string(r.n) + ',' +
               r.mode + ',' + std::to_string(r.nodes) + ',' + std::to_string(r.cache_hits) +
               ',' + r.probability + ',' + ms + ',' + r.heuristic + ',' +
               (r.budget_hit ? '1' : '0') + '\n';
    }
    return out;
}

} // namespace wmclab
