#include "wmclab/rational.hpp"

#include <cctype>
#include <sstream>

namespace wmclab {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) raise(errc::parse_error, "empty rational");

    auto digits_only = [](const std::string& t) {
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = (s[0] == '-');
        s = s.substr(1);
    }

    Rational q;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!digits_only(num) || !digits_only(den))
            raise(errc::parse_error, "bad rational '" + text + "'");
        mpz_class n(num), d(den);
        if (d == 0) raise(errc::parse_error, "zero denominator in '" + text + "'");
        q = Rational(n, d);
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!digits_only(whole) || (!frac.empty() && !digits_only(frac)))
            raise(errc::parse_error, "bad decimal '" + text + "'");
        mpz_class n(whole);
        mpz_class scale = 1;
        for (char c : frac) {
            n = n * 10 + (c - '0');
            scale *= 10;
        }
        q = Rational(n, scale);
    } else {
        if (!digits_only(s)) raise(errc::parse_error, "bad rational '" + text + "'");
        q = Rational(mpz_class(s));
    }
    if (neg) q = -q;
    q.canonicalize();
    return q;
}

std::string rational_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

std::string rational_decimal(const Rational& q, int digits) {
    if (digits < 1) digits = 1;
    mpf_class f(q, static_cast<mp_bitcnt_t>(digits * 4 + 32));
    mp_exp_t exp = 0;
    std::string mant = f.get_str(exp, 10, static_cast<std::size_t>(digits));
    if (mant.empty() || mant == "-") return "0";
    std::string sign;
    if (mant[0] == '-') {
        sign = "-";
        mant = mant.substr(1);
    }
    std::ostringstream os;
    os << sign << "0." << std::string(exp < 0 ? static_cast<std::size_t>(-exp) : 0, '0') << mant;
    std::string out = os.str();
    if (exp > 0) {
        // shift the decimal point right by exp digits
        std::string d = mant;
        while (static_cast<mp_exp_t>(d.size()) < exp) d += '0';
        out = sign + d.substr(0, static_cast<std::size_t>(exp));
        std::string frac = d.substr(static_cast<std::size_t>(exp));
        if (!frac.empty()) out += "." + frac;
    }
    return out;
}

bool is_probability(const Rational& q) { return q >= 0 && q <= 1; }

const char* errc_name(errc c) {
    switch (c) {
        case errc::none: return "ok";
        case errc::parse_error: return "ParseError";
        case errc::invalid_assignment: return "InvalidAssignment";
        case errc::constant_formula: return "ConstantFormula";
        case errc::too_large: return "TooLarge";
        case errc::empty_domain: return "EmptyDomain";
        case errc::unbound_variable: return "UnboundVariable";
        case errc::invalid_diagram: return "InvalidDiagram";
        case errc::unsupported: return "Unsupported";
        case errc::budget_exhausted: return "BudgetExhausted";
        case errc::not_transversal_free: return "NotTransversalFree";
        case errc::not_fully_dependent: return "NotFullyDependent";
        case errc::wrong_function: return "WrongFunction";
        case errc::refused: return "Refused";
        case errc::not_monotone: return "NotMonotone";
        case errc::unsafe_query: return "UnsafeQuery";
        case errc::internal_safety_violation: return "InternalSafetyViolation";
    }
    return "unknown";
}

} // namespace wmclab
