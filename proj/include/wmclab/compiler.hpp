#pragma once

#include <cstdint>
#include <string>

#include "wmclab/diagram.hpp"
#include "wmclab/errors.hpp"
#include "wmclab/lineage.hpp"

namespace wmclab {

/// Branch-variable selection for the trace compiler.
enum class Heuristic { first_unset, max_occurrence };

/// How disconnected components are decomposed: splitting the DNF itself with
/// decomposable Or nodes, or compiling the negated (CNF) view with And
/// splits under a single root Not.
enum class NegationMode { direct_dnf, negate_to_cnf };

const char* heuristic_name(Heuristic h);
const char* negation_mode_name(NegationMode m);
Heuristic parse_heuristic(const std::string& name);
NegationMode parse_negation_mode(const std::string& name);

struct CompileConfig {
    Heuristic heuristic = Heuristic::first_unset;
    NegationMode negation_mode = NegationMode::direct_dnf;
    std::uint64_t node_budget = 10'000'000;
    bool cache = true;
};

struct CompileStats {
    std::uint64_t nodes_created = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;
    std::uint64_t decisions = 0;
    std::uint64_t component_splits = 0;
    double elapsed_seconds = 0.0;
};

struct CompileResult {
    Diagram diagram;
    CompileStats stats;
};

/// Raised when a compilation would exceed its node budget; carries the
/// statistics gathered so far.
class budget_error : public error {
  public:
    explicit budget_error(CompileStats partial)
        : error(errc::budget_exhausted, "node budget exhausted after " +
                                            std::to_string(partial.nodes_created) + " nodes"),
          partial_(partial) {}
    const CompileStats& partial() const { return partial_; }

  private:
    CompileStats partial_;
};

/// Exhaustive search with Shannon expansion, connected-component
/// decomposition, and formula caching; the trace is returned as a diagram
/// (class FBDD, dec-DNNF, or DLDD depending on which rules fired).
///
/// Residuals are canonicalized before caching: constant arguments fold into
/// the combinator, arguments the combinator ignores are dropped, and a
/// combinator that has become a plain disjunction is flattened into a single
/// DNF.  Component splits apply to that flattened view only; direct-dnf mode
/// joins the parts with Or nodes, negate-to-cnf compiles the complement with
/// And splits and negates once at the root.
///
/// Deterministic: a fixed config and input always yield the identical
/// diagram.  Exceeding the node budget raises budget_error.
CompileResult compile(const CompositeLineage& psi, const CompileConfig& cfg = {});

/// Convenience entry point for a bare monotone DNF.
CompileResult compile(const MonotoneDnf& f, const CompileConfig& cfg = {});

} // namespace wmclab
