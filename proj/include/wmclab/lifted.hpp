#pragma once

#include <cstdint>
#include <vector>

#include "wmclab/combinator.hpp"
#include "wmclab/rational.hpp"
#include "wmclab/weights.hpp"

namespace wmclab {

/// The prime implicates of a monotone combinator, as positive clauses over
/// argument indices (each clause sorted, clauses in canonical order).  Their
/// conjunction recomputes f exactly.  Raises errc::not_monotone otherwise.
std::vector<std::vector<int>> positive_cnf(const CombinatorFn& f);

/// Lattice of all unions of CNF clauses, ordered by reverse inclusion: the
/// empty union is the top element, the union of every clause the bottom.
/// Each element carries the Moebius value mu(u, top), defined by mu(top) = 1
/// and mu(u) = -sum of mu(w) over lattice elements w strictly contained in
/// u.  Elements are bitmasks over argument indices.
class ClauseLattice {
  public:
    int arity() const { return arity_; }
    const std::vector<std::vector<int>>& clauses() const { return clauses_; }

    /// All elements, topologically from the top: ascending set size.
    const std::vector<std::uint32_t>& elements() const { return elements_; }

    std::uint32_t top() const { return 0; }
    std::uint32_t bottom() const { return bottom_; }

    /// mu(u, top); u must be an element.
    std::int64_t mobius(std::uint32_t element) const;

    friend ClauseLattice build_lattice_and_mobius(int arity,
                                                  const std::vector<std::vector<int>>& clauses);

  private:
    int arity_ = 0;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::uint32_t> elements_;
    std::vector<std::int64_t> mobius_;
    std::uint32_t bottom_ = 0;
};

/// Closure of the clause list under union plus the empty top, with Moebius
/// values computed by the defining recursion.  Requires at least one clause
/// and arity <= 20.
ClauseLattice build_lattice_and_mobius(int arity, const std::vector<std::vector<int>>& clauses);

/// True iff mu(bottom, top) of the clause lattice of f vanishes: exactly the
/// queries whose weighted model count the lifted engine can evaluate in
/// polynomial time (nonzero values are #P-hard).  Raises errc::not_monotone
/// for non-monotone combinators.
bool is_safe(const CombinatorFn& f);

/// One inclusion-exclusion term of a lifted evaluation.
struct LiftedTerm {
    std::vector<int> members;  ///< argument indices of the lattice element
    std::int64_t mobius = 0;   ///< mu(element, top)
    Rational probability;      ///< Pr of the disjunction of those members
};

struct LiftedResult {
    Rational probability;
    std::vector<LiftedTerm> terms;  ///< contributing elements, in lattice order
    std::uint64_t obdd_nodes = 0;   ///< total nodes across all per-term OBDDs
};

/// Weighted model count of f(H_k0, ..., H_kk) over domain size n by
/// Moebius-weighted inclusion-exclusion: every lattice element u below the
/// top with mu(u) != 0 contributes -mu(u) * Pr[union of the members in u],
/// each probability read off a transversal-free family OBDD.  Requires
/// f.arity() == k+1 and is_safe(f); unsafe queries raise errc::unsafe_query,
/// and a contributing element covering the whole family (which would have no
/// transversal-free OBDD) raises errc::internal_safety_violation.
LiftedResult lifted_wmc(const CombinatorFn& f, int k, int n, const WeightMap& w);

} // namespace wmclab
