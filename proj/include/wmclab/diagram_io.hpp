#pragma once

#include <string>

#include "wmclab/diagram.hpp"

namespace wmclab {

/// Text form of a diagram:
///   mdd <num_nodes> <num_vars> <num_outputs>
///   one line per node, id = position (children always precede parents,
///   the last node is the root):
///     S <label>        sink; label bit o = value of output o
///     D <var> <lo> <hi>  decision on variable-table index <var>
///     A <l> <r>        and          O <l> <r>   or
///     X <l> <r>        xor          E <l> <r>   equiv
///     N <c>            not          P <c>       no-op
///   then one `map <index> <name>` line per variable-table entry.
/// '#' starts a comment; blank lines are ignored.
std::string print_mdd(const Diagram& d);

/// Inverse of print_mdd; raises errc::parse_error on malformed input and
/// errc::invalid_diagram on structurally bad node data.
Diagram parse_mdd(const std::string& text);

/// Graphviz rendering (decisions as circles with dashed 0-edges, operator
/// nodes by symbol, sinks as boxes with their output bits).
std::string print_dot(const Diagram& d);

} // namespace wmclab
