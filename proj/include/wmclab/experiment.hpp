#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmclab/compiler.hpp"
#include "wmclab/lineage.hpp"
#include "wmclab/weights.hpp"

namespace wmclab {

/// One measurement cell of the separation experiment.
struct ExperimentRow {
    std::string query_id;
    int k = 0;
    int n = 0;
    std::string mode;        ///< grounded | lifted | oracle
    std::uint64_t nodes = 0; ///< diagram nodes, lattice OBDD nodes, or oracle evaluations
    std::uint64_t cache_hits = 0;
    std::string probability; ///< exact rational; empty when the run did not complete
    double elapsed_ms = 0.0;
    std::string heuristic; ///< grounded rows only
    bool budget_hit = false;
};

struct ExperimentConfig {
    CompileConfig compile;
    WeightMap weights;
    /// Oracle rows are emitted only while the grounded lineage has at most
    /// this many variables.
    int oracle_cap = 20;
};

/// For each domain size: grounded compilation (budget exhaustion becomes a
/// row flagged budget-hit, not a failure), lifted evaluation when the
/// combinator is safe, and the brute-force oracle when small enough.  All
/// completed probabilities for the same domain size must agree exactly.
std::vector<ExperimentRow> run_separation(const QuerySpec& query, const std::vector<int>& ns,
                                          const ExperimentConfig& cfg = {});

/// CSV with a fixed header row; deterministic apart from elapsed-ms.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

} // namespace wmclab
