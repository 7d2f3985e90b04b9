#include "wmclab/combinator.hpp"

#include <algorithm>

namespace wmclab {

namespace {

std::size_t words_for(int arity) { return std::size_t(1) << std::max(0, arity - 6); }

} // namespace

CombinatorFn::CombinatorFn(int arity) : arity_(arity), table_(words_for(arity), 0) {
    if (arity < 0 || arity > max_arity)
        raise(errc::unsupported, "combinator arity " + std::to_string(arity) + " out of range");
}

CombinatorFn CombinatorFn::from_truth_table(int arity, const std::vector<bool>& table) {
    CombinatorFn f(arity);
    if (table.size() != (std::size_t(1) << arity))
        raise(errc::parse_error, "truth table length must be 2^arity");
    for (std::uint64_t x = 0; x < f.num_rows(); ++x) f.set_index(x, table[x]);
    return f;
}

CombinatorFn CombinatorFn::from_clauses(int arity, const std::vector<std::vector<int>>& clauses) {
    CombinatorFn f(arity);
    for (const auto& clause : clauses) {
        if (clause.empty()) raise(errc::parse_error, "empty clause");
        for (int l : clause)
            if (l < 0 || l >= arity)
                raise(errc::parse_error, "clause index " + std::to_string(l) + " out of range");
    }
    for (std::uint64_t x = 0; x < f.num_rows(); ++x) {
        bool ok = true;
        for (const auto& clause : clauses) {
            bool sat = false;
            for (int l : clause) sat = sat || ((x >> l) & 1);
            if (!sat) {
                ok = false;
                break;
            }
        }
        f.set_index(x, ok);
    }
    // quick sanity: conjunction-of-clauses semantics round-trips
    f.clauses_ = clauses;
    return f;
}

CombinatorFn CombinatorFn::or_of(int arity) {
    CombinatorFn f(arity);
    for (std::uint64_t x = 1; x < f.num_rows(); ++x) f.set_index(x, true);
    return f;
}

CombinatorFn CombinatorFn::and_of(int arity) {
    CombinatorFn f(arity);
    f.set_index(f.num_rows() - 1, true);
    return f;
}

bool CombinatorFn::eval(const std::vector<bool>& args) const {
    if (static_cast<int>(args.size()) != arity_)
        raise(errc::unsupported, "argument count does not match combinator arity");
    std::uint64_t x = 0;
    for (int l = 0; l < arity_; ++l)
        if (args[l]) x |= 1ull << l;
    return eval_index(x);
}

bool CombinatorFn::is_constant() const {
    bool v = eval_index(0);
    for (std::uint64_t x = 1; x < num_rows(); ++x)
        if (eval_index(x) != v) return false;
    return true;
}

bool CombinatorFn::depends_on(int l) const { return dependence_witness(l).has_value(); }

std::optional<std::uint64_t> CombinatorFn::dependence_witness(int l) const {
    if (l < 0 || l >= arity_) return std::nullopt;
    for (std::uint64_t x = 0; x < num_rows(); ++x) {
        if ((x >> l) & 1) continue;
        if (eval_index(x) != eval_index(x | (1ull << l))) return x;
    }
    return std::nullopt;
}

bool CombinatorFn::depends_on_all() const {
    for (int l = 0; l < arity_; ++l)
        if (!depends_on(l)) return false;
    return true;
}

CombinatorFn CombinatorFn::restrict_arg(int l, bool value) const {
    if (l < 0 || l >= arity_) raise(errc::unsupported, "argument index out of range");
    CombinatorFn f(arity_ - 1);
    std::uint64_t low_mask = (1ull << l) - 1;
    for (std::uint64_t y = 0; y < f.num_rows(); ++y) {
        std::uint64_t x = (y & low_mask) | ((y & ~low_mask) << 1);
        if (value) x |= 1ull << l;
        f.set_index(y, eval_index(x));
    }
    return f;
}

CombinatorFn CombinatorFn::fix_tail_to_ones(int first) const {
    CombinatorFn f = *this;
    for (int l = arity_ - 1; l >= first; --l) f = f.restrict_arg(l, true);
    return f;
}

CombinatorFn CombinatorFn::negate() const {
    CombinatorFn f(arity_);
    for (std::uint64_t x = 0; x < num_rows(); ++x) f.set_index(x, !eval_index(x));
    return f;
}

bool CombinatorFn::is_monotone() const {
    for (std::uint64_t x = 0; x < num_rows(); ++x)
        for (int l = 0; l < arity_; ++l)
            if (!((x >> l) & 1) && eval_index(x) && !eval_index(x | (1ull << l))) return false;
    return true;
}

std::string CombinatorFn::table_hex() const {
    std::uint64_t rows = num_rows();
    std::size_t nibbles = static_cast<std::size_t>(std::max<std::uint64_t>(1, rows / 4));
    std::string out(nibbles, '0');
    for (std::uint64_t x = 0; x < rows; ++x) {
        if (!eval_index(x)) continue;
        std::size_t nib = nibbles - 1 - static_cast<std::size_t>(x / 4);
        int bit = static_cast<int>(x % 4);
        int v = out[nib] <= '9' ? out[nib] - '0' : out[nib] - 'a' + 10;
        v |= 1 << bit;
        out[nib] = v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
    }
    return out;
}

CombinatorFn CombinatorFn::from_table_hex(int arity, const std::string& hex) {
    CombinatorFn f(arity);
    std::uint64_t rows = f.num_rows();
    std::size_t expected = static_cast<std::size_t>(std::max<std::uint64_t>(1, rows / 4));
    if (hex.size() != expected)
        raise(errc::parse_error,
              "truth table hex must have " + std::to_string(expected) + " digits");
    for (std::size_t i = 0; i < hex.size(); ++i) {
        char c = hex[hex.size() - 1 - i];
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            v = c - 'A' + 10;
        else
            raise(errc::parse_error, std::string("bad hex digit '") + c + "'");
        for (int b = 0; b < 4; ++b) {
            std::uint64_t x = 4 * i + static_cast<std::uint64_t>(b);
            if (x < rows && ((v >> b) & 1)) f.set_index(x, true);
        }
    }
    return f;
}

} // namespace wmclab
