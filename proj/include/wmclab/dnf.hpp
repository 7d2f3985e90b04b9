#pragma once

#include <set>
#include <string>
#include <vector>

#include "wmclab/assignment.hpp"
#include "wmclab/varid.hpp"

namespace wmclab {

/// Positive term: a set of variables, kept sorted in canonical VarId order.
using Term = std::vector<VarId>;

/// Monotone DNF in canonical minimal form: no duplicate terms, no term
/// absorbed by another, terms sorted.  FALSE is the empty term list; TRUE is
/// the single empty term.  Instances are immutable value types; every
/// constructor and operation returns the canonical form.
class MonotoneDnf {
  public:
    /// FALSE.
    MonotoneDnf() = default;

    /// Canonicalizes: sorts each term, drops duplicates and absorbed terms.
    explicit MonotoneDnf(std::vector<Term> terms);

    static MonotoneDnf truth() { return MonotoneDnf(std::vector<Term>{Term{}}); }
    static MonotoneDnf falsity() { return MonotoneDnf(); }

    bool is_false() const { return terms_.empty(); }
    bool is_true() const { return terms_.size() == 1 && terms_[0].empty(); }
    bool is_constant() const { return is_false() || is_true(); }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    /// Distinct variables, in canonical order.
    std::vector<VarId> support() const;
    std::size_t support_size() const;

    /// True under a (total-on-support or larger) assignment.
    /// Missing variables raise errc::unbound_variable.
    bool evaluate(const Assignment& theta) const;

    /// Disjunction; re-minimizes across both term sets.
    static MonotoneDnf disjoin(const MonotoneDnf& a, const MonotoneDnf& b);

    friend bool operator==(const MonotoneDnf&, const MonotoneDnf&) = default;

    /// Text form: one term per line, variables whitespace-separated;
    /// "TRUE"/"FALSE" for the constants; '#' comments.  parse() accepts any
    /// term order and canonicalizes.
    static MonotoneDnf parse(const std::string& text);
    std::string str() const;

  private:
    std::vector<Term> terms_;
};

/// Formula with the bound variables substituted: terms with a false variable
/// drop out, true variables drop from their terms.  A term emptied by true
/// variables makes the result TRUE.  Detects nothing about theta beyond what
/// Assignment already enforced.
MonotoneDnf restrict_dnf(const MonotoneDnf& phi, const Assignment& theta);

/// Variables occurring as singleton terms, i.e. already-prime single-variable
/// implicants.  Raises errc::constant_formula on TRUE/FALSE.
std::vector<VarId> units(const MonotoneDnf& phi);

/// Number of distinct other variables co-occurring with x in some term.
/// Bounds how many new units any single setting of x can create.
std::size_t degree_bound(const MonotoneDnf& phi, const VarId& x);

/// Maximum of degree_bound over the support (0 for constants).
std::size_t degree_bound_max(const MonotoneDnf& phi);

/// Partition of the terms into variable-disjoint groups (union-find over the
/// co-occurrence graph).  Each group is returned as a MonotoneDnf; their
/// disjunction is phi.  Raises errc::constant_formula on TRUE/FALSE.
std::vector<MonotoneDnf> components(const MonotoneDnf& phi);

} // namespace wmclab
