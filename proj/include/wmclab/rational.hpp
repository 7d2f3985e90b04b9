#pragma once

#include <gmpxx.h>

#include <string>

#include "wmclab/errors.hpp"

namespace wmclab {

/// Exact rational number.  All probability arithmetic in the library is
/// exact; decimal output is for display only.
using Rational = mpq_class;

/// Parse "a/b", an integer, or a decimal like "0.3" (read exactly as 3/10).
Rational parse_rational(const std::string& text);

/// Canonical "a/b" form ("0", "1", "3/8", ...).
std::string rational_string(const Rational& q);

/// Decimal approximation with the given number of significant digits.
std::string rational_decimal(const Rational& q, int digits = 12);

/// True iff 0 <= q <= 1.
bool is_probability(const Rational& q);

} // namespace wmclab
