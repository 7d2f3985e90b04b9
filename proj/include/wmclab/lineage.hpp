#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wmclab/combinator.hpp"
#include "wmclab/dnf.hpp"

namespace wmclab {

/// The k+1 lineages H_k0, ..., H_kk over domain [n]:
///   H_k0 = OR_{i,j} R(i) S_1(i,j)
///   H_kl = OR_{i,j} S_l(i,j) S_{l+1}(i,j)      (0 < l < k)
///   H_kk = OR_{i,j} S_k(i,j) T(j)
/// Each member has exactly n^2 terms; the family spans k*n^2 + 2n variables.
/// Requires k >= 1; n = 0 raises errc::empty_domain.
std::vector<MonotoneDnf> ground_hk_family(int k, int n);

/// Single member H_kl of the family above.
MonotoneDnf ground_hk_member(int k, int l, int n);

/// The disjunction H_k = H_k0 v ... v H_kk.
MonotoneDnf ground_hk(int k, int n);

/// H_0 = OR_{i,j} R(i) S(i,j) T(j): the three-relation chain in one block.
MonotoneDnf ground_h0(int n);

/// The k+2 existence lineages B_0 = OR_i R(i), B_l = OR_{i,j} S_l(i,j)
/// (1 <= l <= k), B_{k+1} = OR_j T(j).
std::vector<MonotoneDnf> ground_b_family(int k, int n);

/// Single member B_l.
MonotoneDnf ground_b_member(int k, int l, int n);

/// One argument position of a composite lineage: either still a formula or
/// already folded to a constant.
struct ArgSlot {
    bool fixed = false;
    bool value = false; ///< meaningful when fixed
    MonotoneDnf dnf;    ///< meaningful when !fixed (never constant)

    static ArgSlot constant(bool v) { return {true, v, {}}; }
    static ArgSlot formula(MonotoneDnf d);
};

/// A combinator applied to monotone DNF arguments.  Arguments that are (or
/// become) constant are folded into the combinator by marking their slot
/// fixed; live argument count therefore equals arity minus fixed count.
class CompositeLineage {
  public:
    CompositeLineage(CombinatorFn f, std::vector<MonotoneDnf> args);
    CompositeLineage(CombinatorFn f, std::vector<ArgSlot> slots);

    const CombinatorFn& combinator() const { return f_; }
    const std::vector<ArgSlot>& slots() const { return slots_; }
    std::size_t live_count() const;

    /// Combinator restricted to the fixed slots: a table over the live
    /// arguments, in slot order.
    CombinatorFn residual_combinator() const;

    /// Union of the live arguments' supports, in canonical order.
    std::vector<VarId> support() const;

    /// True iff the residual combinator is constant (the composite then
    /// computes that constant regardless of the live arguments).
    bool is_constant_function() const;
    bool constant_value() const;

    bool evaluate(const Assignment& theta) const;

    friend bool operator==(const CompositeLineage&, const CompositeLineage&);

  private:
    CombinatorFn f_;
    std::vector<ArgSlot> slots_;
};

/// Each argument restricted by theta, with freshly constant arguments folded
/// into the combinator.
CompositeLineage restrict_composite(const CompositeLineage& psi, const Assignment& theta);

/// Expands the composite into a single flat DNF by distributing the live
/// arguments over the combinator's prime implicants.  Raises
/// errc::not_monotone for non-monotone combinators and errc::too_large when
/// the expansion would exceed term_cap terms before minimization.
MonotoneDnf flatten_composite(const CompositeLineage& psi, std::size_t term_cap = 100000);

/// A query specification: a combinator g plus the chain length k.  Ordinary
/// specs have arity k+1 (g is applied to H_k0..H_kk); dichotomy specs have
/// arity 2k+3, with argument k+1+m denoting the existence bit b_m.
class QuerySpec {
  public:
    QuerySpec(CombinatorFn g, int k, std::optional<int> default_n = std::nullopt);

    const CombinatorFn& combinator() const { return g_; }
    int k() const { return k_; }
    std::optional<int> default_n() const { return n_; }
    bool is_dichotomy() const { return g_.arity() == 2 * k_ + 3; }

    /// Grounded composite over domain [n]: H-family arguments, plus the
    /// B-family for dichotomy specs.
    CompositeLineage lineage(int n) const;

    /// Text format, one key per line:
    ///   k=3
    ///   n=8                    (optional default domain size)
    ///   cnf: 0 2 | 0 3 | 1 3   (positive clauses over argument indices)
    /// or
    ///   tt: <hex>              (truth table, 2^arity bits)
    /// plus an optional "arity=..." line (defaults to k+1).
    static QuerySpec parse(const std::string& text);
    std::string str() const;

  private:
    CombinatorFn g_;
    int k_;
    std::optional<int> n_;
};

} // namespace wmclab
