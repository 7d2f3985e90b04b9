#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "wmclab/assignment.hpp"
#include "wmclab/combinator.hpp"
#include "wmclab/diagram.hpp"
#include "wmclab/dnf.hpp"
#include "wmclab/varid.hpp"

namespace wmclab {

/// Per-edge record of the unit implicants that appear along the edges of a
/// decision diagram for a monotone DNF.  Slot 2*node+value holds the units
/// newly created by the (node, value) edge, in canonical variable order;
/// sinks and no-ops leave their slots empty, and for a monotone formula so
/// do all 0-edges.  root_units are the units already present in the formula
/// itself.  On any root-to-sink path the recorded sets are pairwise
/// disjoint.
struct UnitLedger {
    std::vector<std::vector<VarId>> edge_units;
    std::vector<VarId> root_units;
};

/// Computes the unit ledger of f with respect to phi, from residuals taken
/// along one representative root path per node.  f must validate as a
/// single-output FBDD (errc::invalid_diagram / errc::unsupported otherwise).
UnitLedger unit_ledger(const Diagram& f, const MonotoneDnf& phi);

/// True iff at every reachable decision node whose residual formula has
/// unit implicants, the tested variable is one of them.  Residuals are
/// taken along a representative root path; when f computes phi they are
/// independent of the path chosen.  Raises errc::invalid_diagram unless f
/// validates as an FBDD, errc::unsupported unless it has one output.
bool follows_unit_rule(const Diagram& f, const MonotoneDnf& phi);

/// Rewrites f into an equivalent FBDD in which every node with a unit
/// implicant in its residual tests one: each edge that creates units is
/// replaced by a chain testing them in canonical order, with 1-edges
/// exiting straight to the 1-sink, and downstream re-tests of already
/// chained units collapse into their 0-children.  Units of phi itself get
/// the same chain ahead of the root.  No-op nodes are removed before
/// returning, so the result size is at most about degree_bound_max(phi)
/// times the input size for unit-free inputs.
Diagram to_unit_rule(const Diagram& f, const MonotoneDnf& phi);

/// Compiles a single-output DLDD into an equivalent FBDD.  Operator nodes
/// are eliminated by routing their children into continuation targets: each
/// operator evaluates its lighter child first and jumps into (possibly
/// private copies of) the heavier child, NOT nodes swap continuations, so
/// only decision nodes and two sinks remain.  The output never exceeds
/// N * 2^(ceil(log2 N)^2) nodes for an N-node input, and an input that is
/// already an FBDD comes back function-identical and no larger.  Raises
/// errc::invalid_diagram on inputs that do not validate as DLDDs,
/// errc::unsupported on multi-output inputs, and errc::budget_exhausted
/// when the output would exceed budget nodes.
Diagram dldd_to_fbdd(const Diagram& d, std::uint64_t budget = 10'000'000);

/// The pairs (i, j) whose chain terms survive a partial assignment as prime
/// implicants of every member of the k-chain family, plus matching data:
/// max_independent is the largest number of pairs with pairwise distinct
/// rows and columns, and cover is a minimum set of R(i) / T(j) variables
/// meeting every pair (its size equals max_independent); binding any cover
/// variable, either way, removes every pair through its row or column.
struct TransversalSet {
    std::vector<std::pair<int, int>> pairs;
    int max_independent = 0;
    std::vector<VarId> cover;

    bool contains(int i, int j) const;
};

/// Scans all (i, j) in [n]^2 for pairs whose chain term is a prime
/// implicant of every H_k member restricted by theta.  k >= 1, n >= 1.
TransversalSet find_transversals(const Assignment& theta, int k, int n);

/// The variables Z, unbound under theta, for which theta u {Z=1} admits no
/// transversal although theta does.  With at least four independent
/// transversals this equals the union of the unit implicants of the
/// restricted members; otherwise each candidate is tested against the
/// definition directly.
std::vector<VarId> hk_units(const Assignment& theta, int k, int n);

/// The canonical variable table of the k-chain family over domain size n:
/// R(1..n), then S_l(i,j) for l in 1..k row-major, then T(1..n).
std::vector<VarId> hk_variable_table(int k, int n);

/// Construction metrics reported by build_family_obdd.
struct FamilyObddStats {
    std::size_t max_level_width = 0; ///< widest automaton level over all leaves
    int branch_depth = 0;            ///< deepest exhaustively tested prefix
};

/// Builds a multi-output OBDD over the canonical family table computing
/// H_kl[theta] on output l for every l in subset and constant 0 on the
/// remaining outputs.  Variables are ordered row-major on the side of each
/// surviving R(i) and column-major (T(j) first) on the side of each
/// surviving T(j), which keeps every level of the level automaton below
/// 2^(k+3) states as long as theta leaves no transversal alive across the
/// whole chain.  When subset covers the whole chain and transversals
/// survive, a minimum cover of them is tested exhaustively first; more than
/// t_cap independent transversals raise errc::not_transversal_free.
Diagram build_family_obdd(const Assignment& theta, const std::vector<int>& subset, int k, int n,
                          int t_cap = 8, FamilyObddStats* stats = nullptr);

/// Converts an FBDD computing comb(H_k0, ..., H_kk) over domain size n into
/// a multi-output FBDD computing the family members themselves.  Nodes
/// whose representative path keeps at least four independent transversals
/// are kept (with unit-chain edges spliced in and redundant re-tests of
/// chained units collapsed); every exit from that region is replaced by a
/// family OBDD for the exit assignment.  Raises errc::unsupported unless
/// comb has arity k+1, errc::not_fully_dependent if comb ignores an
/// argument, errc::invalid_diagram unless f is a single-output FBDD, and
/// errc::wrong_function when f provably does not compute the composition.
Diagram fbdd_to_multioutput(const Diagram& f, const CombinatorFn& comb, int k, int n);

/// Outcome of the hard/easy classification of a 2k+3-ary combinator.
struct DichotomyClass {
    bool hard = false;
    int witness_index = -1; ///< an H-argument the all-ones projection ignores; -1 when hard
};

/// A combinator g(X_0..X_k, B_0..B_k+1) is hard iff fixing every B argument
/// to 1 leaves a function that depends on all k+1 X arguments.  Otherwise
/// witness_index reports the smallest ignored X argument.
DichotomyClass classify_dichotomy(const CombinatorFn& g, int k);

/// Builds a polynomial-size FBDD for the lineage of an easy dichotomy
/// query: k+3 cascading layers test the R block, each S block and the T
/// block for an all-zero member, and every exit attaches a family OBDD for
/// the partial assignment accumulated so far, with sinks evaluated through
/// g.  Raises errc::refused for combinators classified hard.
Diagram build_dichotomy_fbdd(const CombinatorFn& g, int k, int n);

} // namespace wmclab
