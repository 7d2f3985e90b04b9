#include "wmclab/varid.hpp"

#include <cctype>

#include "wmclab/errors.hpp"

namespace wmclab {

std::string VarId::str() const {
    switch (kind) {
        case VarKind::R: return "R(" + std::to_string(row) + ")";
        case VarKind::S:
            return "S" + std::to_string(level) + "(" + std::to_string(row) + "," +
                   std::to_string(col) + ")";
        case VarKind::T: return "T(" + std::to_string(col) + ")";
        case VarKind::named: return name;
    }
    return name;
}

namespace {

bool valid_symbol(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// Parse "(a)" or "(a,b)" starting at text[pos]; pos must point at '('.
bool parse_indices(const std::string& text, std::size_t pos, std::uint32_t* a, std::uint32_t* b,
                   bool want_two) {
    if (pos >= text.size() || text[pos] != '(') return false;
    std::size_t p = pos + 1;
    auto number = [&](std::uint32_t* out) {
        if (p >= text.size() || !std::isdigit(static_cast<unsigned char>(text[p]))) return false;
        std::uint64_t v = 0;
        while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
            v = v * 10 + static_cast<std::uint64_t>(text[p] - '0');
            if (v > 0xffffffffULL) return false;
            ++p;
        }
        *out = static_cast<std::uint32_t>(v);
        return true;
    };
    if (!number(a)) return false;
    if (want_two) {
        if (p >= text.size() || text[p] != ',') return false;
        ++p;
        if (!number(b)) return false;
    }
    return p + 1 == text.size() && text[p] == ')';
}

} // namespace

VarId VarId::parse(const std::string& text) {
    if (text.empty()) raise(errc::parse_error, "empty variable name");

    if (text[0] == 'R' && text.size() > 1 && text[1] == '(') {
        std::uint32_t i = 0;
        if (parse_indices(text, 1, &i, nullptr, false)) return VarId::r(i);
        raise(errc::parse_error, "bad variable '" + text + "'");
    }
    if (text[0] == 'T' && text.size() > 1 && text[1] == '(') {
        std::uint32_t j = 0;
        if (parse_indices(text, 1, &j, nullptr, false)) return VarId::t(j);
        raise(errc::parse_error, "bad variable '" + text + "'");
    }
    if (text[0] == 'S') {
        std::size_t p = 1;
        std::uint64_t level = 0;
        bool has_level = false;
        while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
            level = level * 10 + static_cast<std::uint64_t>(text[p] - '0');
            has_level = true;
            ++p;
        }
        if (p < text.size() && text[p] == '(' && level <= 0xffff) {
            std::uint32_t i = 0, j = 0;
            if (parse_indices(text, p, &i, &j, true))
                return VarId::s(has_level ? static_cast<std::uint16_t>(level) : 1, i, j);
            raise(errc::parse_error, "bad variable '" + text + "'");
        }
    }
    if (!valid_symbol(text)) raise(errc::parse_error, "bad variable '" + text + "'");
    return VarId::sym(text);
}

} // namespace wmclab
