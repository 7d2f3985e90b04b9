#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace wmclab {

/// Relation kind of a grounded variable.  `named` covers free-form
/// propositional symbols ("X", "W", ...) used in hand-written formulas.
enum class VarKind : std::uint8_t { R = 0, S = 1, T = 2, named = 3 };

/// Identifier of a propositional variable.  Grounded tuples carry their
/// relation kind and indices: R(i), S_l(i,j), T(j).  The total order is
/// (kind, level, row, col) with named symbols last, ordered by name; it is
/// the canonical order used for term sorting, serialization, and
/// tie-breaking everywhere in the library.
struct VarId {
    VarKind kind = VarKind::named;
    std::uint16_t level = 0; ///< l for S_l; 0 otherwise
    std::uint32_t row = 0;   ///< i for R(i), S_l(i,j)
    std::uint32_t col = 0;   ///< j for S_l(i,j), T(j)
    std::string name;        ///< only for VarKind::named

    static VarId r(std::uint32_t i) { return {VarKind::R, 0, i, 0, {}}; }
    static VarId s(std::uint16_t level, std::uint32_t i, std::uint32_t j) {
        return {VarKind::S, level, i, j, {}};
    }
    static VarId t(std::uint32_t j) { return {VarKind::T, 0, 0, j, {}}; }
    static VarId sym(std::string n) { return {VarKind::named, 0, 0, 0, std::move(n)}; }

    friend bool operator==(const VarId& a, const VarId& b) = default;
    friend std::strong_ordering operator<=>(const VarId& a, const VarId& b) {
        if (auto c = a.kind <=> b.kind; c != 0) return c;
        if (auto c = a.level <=> b.level; c != 0) return c;
        if (auto c = a.row <=> b.row; c != 0) return c;
        if (auto c = a.col <=> b.col; c != 0) return c;
        return a.name <=> b.name;
    }

    /// Text form: "R(3)", "S2(1,4)", "T(7)", or the bare symbol name.
    std::string str() const;

    /// Inverse of str().  Also accepts "S(i,j)" as shorthand for "S1(i,j)".
    /// Throws errc::parse_error on malformed input.
    static VarId parse(const std::string& text);
};

} // namespace wmclab
