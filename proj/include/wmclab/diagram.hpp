#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmclab/assignment.hpp"
#include "wmclab/rational.hpp"
#include "wmclab/varid.hpp"
#include "wmclab/weights.hpp"

namespace wmclab {

/// Node kinds of a decision diagram.  Binary operator nodes are only sound
/// when their children touch disjoint variables (checked by validate);
/// no-op nodes have a single child and no semantic effect.
enum class NodeKind : std::uint8_t { sink, decision, op_and, op_or, op_xor, op_equiv, op_not, noop };

/// One diagram node.  Meaning of the fields by kind:
///   sink:      label = output bits (bit o = value of output o)
///   decision:  var (index into the diagram's variable table), a = 0-child,
///              b = 1-child
///   and/or/xor/equiv: a, b = children
///   not/noop:  a = child
struct Node {
    NodeKind kind = NodeKind::sink;
    std::uint32_t var = 0;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t label = 0;

    static Node sink(std::uint32_t label) { return {NodeKind::sink, 0, 0, 0, label}; }
    static Node decision(std::uint32_t var, std::uint32_t lo, std::uint32_t hi) {
        return {NodeKind::decision, var, lo, hi, 0};
    }
    static Node binary(NodeKind kind, std::uint32_t l, std::uint32_t r) {
        return {kind, 0, l, r, 0};
    }
    static Node op_not(std::uint32_t c) { return {NodeKind::op_not, 0, c, 0, 0}; }
    static Node noop(std::uint32_t c) { return {NodeKind::noop, 0, c, 0, 0}; }

    bool is_binary() const {
        return kind == NodeKind::op_and || kind == NodeKind::op_or || kind == NodeKind::op_xor ||
               kind == NodeKind::op_equiv;
    }
    friend bool operator==(const Node&, const Node&) = default;
};

/// Most specific diagram class; the classes nest:
/// fbdd < dec_dnnf < dldd < invalid-free universe.
enum class DiagramClass { fbdd, dec_dnnf, dldd, invalid };

const char* diagram_class_name(DiagramClass c);

/// Result of structural validation.
struct ValidationReport {
    bool read_once = false;
    /// On a read-once failure: node ids from the root through the decision
    /// node whose variable is re-tested, down to the offending re-test.
    std::vector<std::uint32_t> witness_path;

    bool decomposable = false;
    /// On a decomposability failure: the operator node and one variable
    /// shared between its children.
    std::optional<std::uint32_t> offending_node;
    std::optional<VarId> offending_var;

    DiagramClass diagram_class = DiagramClass::invalid;

    bool valid() const { return diagram_class != DiagramClass::invalid; }
    /// True when the diagram belongs to (a subclass of) the given class.
    bool within(DiagramClass c) const {
        return valid() && static_cast<int>(diagram_class) <= static_cast<int>(c);
    }
};

/// Multi-output decision diagram over a fixed variable table.  Nodes are
/// stored children-before-parents; the root is always the last node.  The
/// size of a diagram counts every stored node, sinks included.  Instances
/// are immutable.
class Diagram {
  public:
    static constexpr int max_outputs = 32;

    /// Checks index ranges, topological storage, label width, and root
    /// position; raises errc::invalid_diagram on violations.
    Diagram(std::vector<VarId> vars, std::vector<Node> nodes, int outputs);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<VarId>& vars() const { return vars_; }
    std::uint32_t root() const { return static_cast<std::uint32_t>(nodes_.size() - 1); }
    int outputs() const { return outputs_; }
    std::size_t size() const { return nodes_.size(); }

    /// Index of var in the table, if present.
    std::optional<std::uint32_t> var_index(const VarId& var) const;

    friend bool operator==(const Diagram&, const Diagram&) = default;

  private:
    std::vector<VarId> vars_;
    std::vector<Node> nodes_;
    int outputs_;
};

/// Recursive bottom-up evaluation (all diagram classes).  theta must bind
/// every variable tested in the diagram; a missing one raises
/// errc::unbound_variable.  Returns one bit per output.
std::vector<bool> evaluate(const Diagram& d, const Assignment& theta);

/// Exact weighted model count per output, by one memoized bottom-up pass:
///   decision -> (1-p) P(lo) + p P(hi)        and  -> P(a) P(b)
///   or  -> 1 - (1-P(a))(1-P(b))              not  -> 1 - P(a)
///   xor -> P(a)(1-P(b)) + (1-P(a)) P(b)      equiv-> P(a)P(b) + (1-P(a))(1-P(b))
/// Validation runs first; an invalid diagram raises errc::invalid_diagram
/// (the product rules are unsound without decomposability).
std::vector<Rational> wmc(const Diagram& d, const WeightMap& w);

/// Structural validation: read-once along every path, decomposability of
/// every operator node, and the most specific class membership.
ValidationReport validate(const Diagram& d);

/// Diagram computing the negation: sinks flip, and/or swap, xor/equiv swap,
/// decisions stay.  Single-output only (errc::unsupported otherwise).
Diagram dualize(const Diagram& d);

/// Same function with every no-op node spliced out.  If everything reduces
/// to a bare sink, the result is that single sink.
Diagram remove_noops(const Diagram& d);

/// Decision nodes on theta-bound variables become no-ops pointing at the
/// selected child; unreachable nodes are dropped (relative order kept).
/// With an empty theta this returns the diagram unchanged.
Diagram restrict_diagram(const Diagram& d, const Assignment& theta);

/// Single-output diagram whose value is the OR of the listed output
/// coordinates (sink relabeling; structure unchanged).
Diagram project_outputs_or(const Diagram& d, const std::vector<int>& outputs);

/// Single-output diagram for one output coordinate.
Diagram project_output(const Diagram& d, int output);

/// Incremental construction helper.  Nodes may be added in any order with
/// children referenced by the returned handles; finalize() emits a Diagram
/// in deterministic post-order (unreachable nodes dropped).
class DiagramBuilder {
  public:
    DiagramBuilder(std::vector<VarId> vars, int outputs);

    std::uint32_t add(const Node& n);
    std::uint32_t sink(std::uint32_t label);
    std::uint32_t decision(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);
    std::size_t count() const { return nodes_.size(); }

    Diagram finalize(std::uint32_t root) &&;

  private:
    std::vector<VarId> vars_;
    std::vector<Node> nodes_;
    int outputs_;
};

} // namespace wmclab
