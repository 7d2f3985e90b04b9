#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmclab/errors.hpp"

namespace wmclab {

/// Boolean combinator f over m named arguments, stored as a full truth table
/// (bit x of the table is f applied to the assignment whose bit l is
/// (x >> l) & 1).  Optionally carries the positive CNF it was built from.
/// Arity is capped at 20: tables are meant for query-sized combinators, not
/// for general formulas.
class CombinatorFn {
  public:
    static constexpr int max_arity = 20;

    /// Constant false of the given arity.
    explicit CombinatorFn(int arity);

    static CombinatorFn from_truth_table(int arity, const std::vector<bool>& table);

    /// Conjunction of positive clauses, each a set of argument indices.
    /// Clauses are validated against the resulting table.
    static CombinatorFn from_clauses(int arity, const std::vector<std::vector<int>>& clauses);

    static CombinatorFn or_of(int arity);
    static CombinatorFn and_of(int arity);

    int arity() const { return arity_; }
    bool eval_index(std::uint64_t x) const {
        return (table_[x >> 6] >> (x & 63)) & 1;
    }
    bool eval(const std::vector<bool>& args) const;

    bool is_constant() const;
    /// Defined only when is_constant().
    bool constant_value() const { return eval_index(0); }

    /// True iff flipping argument l can change the output.
    bool depends_on(int l) const;

    /// A witness for depends_on: values for the other arguments under which
    /// flipping l flips the output (bit i of the result is argument i's
    /// value; bit l is unspecified).  nullopt when independent.
    std::optional<std::uint64_t> dependence_witness(int l) const;

    bool depends_on_all() const;

    /// f with argument l fixed to value; arity drops by one, remaining
    /// arguments keep their relative order.
    CombinatorFn restrict_arg(int l, bool value) const;

    /// f with arguments first..arity-1 all fixed to 1 (used to evaluate a
    /// 2k+3-ary dichotomy combinator at b = 1).
    CombinatorFn fix_tail_to_ones(int first) const;

    CombinatorFn negate() const;

    bool is_monotone() const;

    /// The clause list this combinator was constructed from, if any.
    const std::optional<std::vector<std::vector<int>>>& clauses() const { return clauses_; }

    friend bool operator==(const CombinatorFn& a, const CombinatorFn& b) {
        return a.arity_ == b.arity_ && a.table_ == b.table_;
    }

    /// Truth table as a hex string (big-endian nibbles, 2^arity bits).
    std::string table_hex() const;
    static CombinatorFn from_table_hex(int arity, const std::string& hex);

    /// Raw table words (bit x of the sequence = f at assignment-index x).
    const std::vector<std::uint64_t>& table_words() const { return table_; }

  private:
    int arity_;
    std::vector<std::uint64_t> table_;
    std::optional<std::vector<std::vector<int>>> clauses_;

    std::uint64_t num_rows() const { return 1ull << arity_; }
    void set_index(std::uint64_t x, bool v) {
        if (v)
            table_[x >> 6] |= 1ull << (x & 63);
        else
            table_[x >> 6] &= ~(1ull << (x & 63));
    }
};

} // namespace wmclab
