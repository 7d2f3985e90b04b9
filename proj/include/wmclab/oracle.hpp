#pragma once

#include <cstdint>

#include "wmclab/dnf.hpp"
#include "wmclab/lineage.hpp"
#include "wmclab/rational.hpp"
#include "wmclab/weights.hpp"

namespace wmclab {

/// Default cap on the number of variables brute-force enumeration accepts.
inline constexpr std::size_t kOracleDefaultCap = 24;

/// Exact weighted model count of phi by enumerating all assignments over its
/// support.  This is the reference implementation everything else is checked
/// against: it never touches diagrams or compilation.  Raises errc::too_large
/// past the cap.
Rational brute_force_wmc(const MonotoneDnf& phi, const WeightMap& w,
                         std::size_t cap = kOracleDefaultCap);

/// Same, for a composite lineage (enumerates the union of the live
/// arguments' supports).
Rational brute_force_wmc(const CompositeLineage& psi, const WeightMap& w,
                         std::size_t cap = kOracleDefaultCap);

/// Unweighted model count over exactly the support of phi (2^support
/// assignments).  Used in self-consistency tests.
std::uint64_t brute_force_count(const MonotoneDnf& phi, std::size_t cap = kOracleDefaultCap);

} // namespace wmclab
