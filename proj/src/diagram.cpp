#include "wmclab/diagram.hpp"

#include <algorithm>

#include "wmclab/errors.hpp"

namespace wmclab {

const char* diagram_class_name(DiagramClass c) {
    switch (c) {
        case DiagramClass::fbdd: return "FBDD";
        case DiagramClass::dec_dnnf: return "dec-DNNF";
        case DiagramClass::dldd: return "DLDD";
        case DiagramClass::invalid: return "invalid";
    }
    return "invalid";
}

Diagram::Diagram(std::vector<VarId> vars, std::vector<Node> nodes, int outputs)
    : vars_(std::move(vars)), nodes_(std::move(nodes)), outputs_(outputs) {
    if (outputs_ < 1 || outputs_ > max_outputs)
        raise(errc::invalid_diagram, "output count out of range");
    if (nodes_.empty()) raise(errc::invalid_diagram, "diagram has no nodes");
    std::uint64_t label_limit = outputs_ >= 32 ? 0 : (1ull << outputs_);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        auto check_child = [&](std::uint32_t c) {
            if (c >= i) raise(errc::invalid_diagram,
                              "node " + std::to_string(i) + " references child " +
                                  std::to_string(c) + " not strictly before it");
        };
        switch (n.kind) {
            case NodeKind::sink:
                if (label_limit && n.label >= label_limit)
                    raise(errc::invalid_diagram, "sink label has bits beyond the output count");
                break;
            case NodeKind::decision:
                if (n.var >= vars_.size())
                    raise(errc::invalid_diagram, "decision variable index out of range");
                check_child(n.a);
                check_child(n.b);
                break;
            case NodeKind::op_and:
            case NodeKind::op_or:
            case NodeKind::op_xor:
            case NodeKind::op_equiv:
                check_child(n.a);
                check_child(n.b);
                break;
            case NodeKind::op_not:
            case NodeKind::noop:
                check_child(n.a);
                break;
        }
    }
}

std::optional<std::uint32_t> Diagram::var_index(const VarId& var) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == var) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

std::vector<bool> evaluate(const Diagram& d, const Assignment& theta) {
    std::uint32_t mask =
        d.outputs() >= 32 ? 0xffffffffu : ((1u << d.outputs()) - 1u);
    std::vector<std::uint32_t> val(d.size());
    // cache variable values on first use
    std::vector<signed char> var_val(d.vars().size(), -1);
    auto value_of = [&](std::uint32_t v) {
        if (var_val[v] < 0) {
            auto b = theta.get(d.vars()[v]);
            if (!b) raise(errc::unbound_variable, d.vars()[v].str() + " has no value");
            var_val[v] = *b ? 1 : 0;
        }
        return var_val[v] == 1;
    };
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Node& n = d.nodes()[i];
        switch (n.kind) {
            case NodeKind::sink: val[i] = n.label; break;
            case NodeKind::decision: val[i] = value_of(n.var) ? val[n.b] : val[n.a]; break;
            case NodeKind::op_and: val[i] = val[n.a] & val[n.b]; break;
            case NodeKind::op_or: val[i] = val[n.a] | val[n.b]; break;
            case NodeKind::op_xor: val[i] = val[n.a] ^ val[n.b]; break;
            case NodeKind::op_equiv: val[i] = ~(val[n.a] ^ val[n.b]) & mask; break;
            case NodeKind::op_not: val[i] = ~val[n.a] & mask; break;
            case NodeKind::noop: val[i] = val[n.a]; break;
        }
    }
    std::uint32_t out = val[d.root()];
    std::vector<bool> bits(static_cast<std::size_t>(d.outputs()));
    for (int o = 0; o < d.outputs(); ++o) bits[static_cast<std::size_t>(o)] = (out >> o) & 1;
    return bits;
}

std::vector<Rational> wmc(const Diagram& d, const WeightMap& w) {
    ValidationReport report = validate(d);
    if (!report.valid())
        raise(errc::invalid_diagram, "weighted counting requires a valid diagram (got class "
                                         + std::string(diagram_class_name(report.diagram_class)) +
                                         ")");
    std::size_t m = static_cast<std::size_t>(d.outputs());
    std::vector<std::vector<Rational>> p(d.size(), std::vector<Rational>(m));
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Node& n = d.nodes()[i];
        for (std::size_t o = 0; o < m; ++o) {
            switch (n.kind) {
                case NodeKind::sink: p[i][o] = (n.label >> o) & 1 ? 1 : 0; break;
                case NodeKind::decision: {
                    const Rational& q = w.get(d.vars()[n.var]);
                    p[i][o] = (Rational(1) - q) * p[n.a][o] + q * p[n.b][o];
                    break;
                }
                case NodeKind::op_and: p[i][o] = p[n.a][o] * p[n.b][o]; break;
                case NodeKind::op_or:
                    p[i][o] = Rational(1) - (Rational(1) - p[n.a][o]) * (Rational(1) - p[n.b][o]);
                    break;
                case NodeKind::op_xor:
                    p[i][o] = p[n.a][o] * (Rational(1) - p[n.b][o]) +
                              (Rational(1) - p[n.a][o]) * p[n.b][o];
                    break;
                case NodeKind::op_equiv:
                    p[i][o] = p[n.a][o] * p[n.b][o] +
                              (Rational(1) - p[n.a][o]) * (Rational(1) - p[n.b][o]);
                    break;
                case NodeKind::op_not: p[i][o] = Rational(1) - p[n.a][o]; break;
                case NodeKind::noop: p[i][o] = p[n.a][o]; break;
            }
        }
    }
    return p[d.root()];
}

namespace {

/// Per-node sets of variables tested at or below the node, as bit words.
class VarsBelow {
  public:
    VarsBelow(const Diagram& d)
        : words_((d.vars().size() + 63) / 64), bits_(d.size() * words_, 0) {
        for (std::size_t i = 0; i < d.size(); ++i) {
            const Node& n = d.nodes()[i];
            switch (n.kind) {
                case NodeKind::sink: break;
                case NodeKind::decision:
                    merge(i, n.a);
                    merge(i, n.b);
                    bits_[i * words_ + n.var / 64] |= 1ull << (n.var % 64);
                    break;
                case NodeKind::op_and:
                case NodeKind::op_or:
                case NodeKind::op_xor:
                case NodeKind::op_equiv:
                    merge(i, n.a);
                    merge(i, n.b);
                    break;
                case NodeKind::op_not:
                case NodeKind::noop: merge(i, n.a); break;
            }
        }
    }

    bool contains(std::size_t node, std::uint32_t var) const {
        return (bits_[node * words_ + var / 64] >> (var % 64)) & 1;
    }

    /// Lowest variable index in the intersection of two nodes' sets, if any.
    std::optional<std::uint32_t> first_shared(std::size_t x, std::size_t y) const {
        for (std::size_t wd = 0; wd < words_; ++wd) {
            std::uint64_t both = bits_[x * words_ + wd] & bits_[y * words_ + wd];
            if (both)
                return static_cast<std::uint32_t>(wd * 64 +
                                                  static_cast<std::size_t>(__builtin_ctzll(both)));
        }
        return std::nullopt;
    }

  private:
    void merge(std::size_t dst, std::size_t src) {
        for (std::size_t wd = 0; wd < words_; ++wd)
            bits_[dst * words_ + wd] |= bits_[src * words_ + wd];
    }

    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

// Deterministic path from `from` down to a decision node testing `var`
// (which must exist below `from`); appends node ids to `path`.
void path_to_test(const Diagram& d, const VarsBelow& below, std::uint32_t from, std::uint32_t var,
                  std::vector<std::uint32_t>& path) {
    std::uint32_t cur = from;
    while (true) {
        path.push_back(cur);
        const Node& n = d.nodes()[cur];
        if (n.kind == NodeKind::decision && n.var == var) return;
        // descend into the first child that still contains var
        std::uint32_t next = n.a;
        if (n.kind == NodeKind::decision || n.is_binary())
            if (!below.contains(n.a, var)) next = n.b;
        cur = next;
    }
}

// Deterministic path from the root to `target` (preferring a/lo children).
std::vector<std::uint32_t> path_from_root(const Diagram& d, std::uint32_t target) {
    // reachability of target from each node
    std::vector<char> reaches(d.size(), 0);
    reaches[target] = 1;
    for (std::size_t i = target + 1; i < d.size(); ++i) {
        const Node& n = d.nodes()[i];
        switch (n.kind) {
            case NodeKind::sink: break;
            case NodeKind::decision:
            case NodeKind::op_and:
            case NodeKind::op_or:
            case NodeKind::op_xor:
            case NodeKind::op_equiv: reaches[i] = reaches[n.a] || reaches[n.b]; break;
            case NodeKind::op_not:
            case NodeKind::noop: reaches[i] = reaches[n.a]; break;
        }
    }
    std::vector<std::uint32_t> path;
    if (!reaches[d.root()]) return path; // offender not reachable; witness starts there
    std::uint32_t cur = d.root();
    while (cur != target) {
        path.push_back(cur);
        const Node& n = d.nodes()[cur];
        std::uint32_t next = n.a;
        if ((n.kind == NodeKind::decision || n.is_binary()) && !reaches[n.a]) next = n.b;
        cur = next;
    }
    return path;
}

} // namespace

ValidationReport validate(const Diagram& d) {
    ValidationReport report;
    VarsBelow below(d);

    report.read_once = true;
    report.decomposable = true;

    bool has_ops = false, has_not = false, has_and = false, has_other_ops = false;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Node& n = d.nodes()[i];
        if (n.kind == NodeKind::decision && report.read_once) {
            std::uint32_t v = n.var;
            std::uint32_t bad_child = 0;
            bool violation = false;
            if (below.contains(n.a, v)) {
                violation = true;
                bad_child = n.a;
            } else if (below.contains(n.b, v)) {
                violation = true;
                bad_child = n.b;
            }
            if (violation) {
                report.read_once = false;
                report.witness_path = path_from_root(d, static_cast<std::uint32_t>(i));
                report.witness_path.push_back(static_cast<std::uint32_t>(i));
                path_to_test(d, below, bad_child, v, report.witness_path);
            }
        } else if (n.is_binary() && report.decomposable) {
            if (auto shared = below.first_shared(n.a, n.b)) {
                report.decomposable = false;
                report.offending_node = static_cast<std::uint32_t>(i);
                report.offending_var = d.vars()[*shared];
            }
        }
    }
    for (const Node& n : d.nodes()) {
        switch (n.kind) {
            case NodeKind::op_and: has_ops = has_and = true; break;
            case NodeKind::op_or:
            case NodeKind::op_xor:
            case NodeKind::op_equiv: has_ops = has_other_ops = true; break;
            case NodeKind::op_not: has_ops = has_not = true; break;
            default: break;
        }
    }

    if (!report.read_once || !report.decomposable) {
        report.diagram_class = DiagramClass::invalid;
    } else if (!has_ops) {
        report.diagram_class = DiagramClass::fbdd;
    } else if (has_and && !has_other_ops && !has_not) {
        report.diagram_class = DiagramClass::dec_dnnf;
    } else {
        report.diagram_class = DiagramClass::dldd;
    }
    return report;
}

Diagram dualize(const Diagram& d) {
    if (d.outputs() != 1)
        raise(errc::unsupported, "dualize is defined for single-output diagrams");
    std::vector<Node> nodes = d.nodes();
    for (Node& n : nodes) {
        switch (n.kind) {
            case NodeKind::sink: n.label ^= 1u; break;
            case NodeKind::op_and: n.kind = NodeKind::op_or; break;
            case NodeKind::op_or: n.kind = NodeKind::op_and; break;
            case NodeKind::op_xor: n.kind = NodeKind::op_equiv; break;
            case NodeKind::op_equiv: n.kind = NodeKind::op_xor; break;
            default: break;
        }
    }
    return Diagram(d.vars(), std::move(nodes), 1);
}

namespace {

Diagram prune_unreachable(const std::vector<VarId>& vars, const std::vector<Node>& nodes,
                          std::uint32_t root, int outputs) {
    std::vector<char> keep(nodes.size(), 0);
    keep[root] = 1;
    for (std::size_t i = root + 1; i-- > 0;) {
        if (!keep[i]) continue;
        const Node& n = nodes[i];
        switch (n.kind) {
            case NodeKind::sink: break;
            case NodeKind::decision:
            case NodeKind::op_and:
            case NodeKind::op_or:
            case NodeKind::op_xor:
            case NodeKind::op_equiv:
                keep[n.a] = 1;
                keep[n.b] = 1;
                break;
            case NodeKind::op_not:
            case NodeKind::noop: keep[n.a] = 1; break;
        }
    }
    std::vector<std::uint32_t> remap(nodes.size(), 0);
    std::vector<Node> out;
    out.reserve(nodes.size());
    for (std::size_t i = 0; i <= root; ++i) {
        if (!keep[i]) continue;
        remap[i] = static_cast<std::uint32_t>(out.size());
        Node n = nodes[i];
        if (n.kind != NodeKind::sink) {
            n.a = remap[n.a];
            if (n.kind == NodeKind::decision || n.is_binary()) n.b = remap[n.b];
        }
        out.push_back(n);
    }
    return Diagram(vars, std::move(out), outputs);
}

} // namespace

Diagram remove_noops(const Diagram& d) {
    std::vector<std::uint32_t> target(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Node& n = d.nodes()[i];
        target[i] = n.kind == NodeKind::noop ? target[n.a] : static_cast<std::uint32_t>(i);
    }
    std::vector<Node> nodes = d.nodes();
    for (Node& n : nodes) {
        if (n.kind == NodeKind::sink || n.kind == NodeKind::noop) continue;
        n.a = target[n.a];
        if (n.kind == NodeKind::decision || n.is_binary()) n.b = target[n.b];
    }
    return prune_unreachable(d.vars(), nodes, target[d.root()], d.outputs());
}

Diagram restrict_diagram(const Diagram& d, const Assignment& theta) {
    if (theta.empty()) return d;
    // resolve bound variable table indices once
    std::vector<signed char> bound(d.vars().size(), -1);
    for (std::size_t v = 0; v < d.vars().size(); ++v)
        if (auto val = theta.get(d.vars()[v])) bound[v] = *val ? 1 : 0;
    std::vector<Node> nodes = d.nodes();
    for (Node& n : nodes)
        if (n.kind == NodeKind::decision && bound[n.var] >= 0)
            n = Node::noop(bound[n.var] ? n.b : n.a);
    return prune_unreachable(d.vars(), nodes, d.root(), d.outputs());
}

namespace {

Diagram relabel_sinks(const Diagram& d, const std::vector<int>& outputs, bool as_or) {
    for (int o : outputs)
        if (o < 0 || o >= d.outputs()) raise(errc::unsupported, "output index out of range");
    for (const Node& n : d.nodes())
        if (n.is_binary() || n.kind == NodeKind::op_not)
            raise(errc::unsupported,
                  "output projection requires a pure decision diagram (operator nodes combine "
                  "outputs coordinate-wise)");
    std::vector<Node> nodes = d.nodes();
    for (Node& n : nodes) {
        if (n.kind != NodeKind::sink) continue;
        bool v = as_or ? false : true;
        for (int o : outputs) v = as_or ? (v || ((n.label >> o) & 1)) : (v && ((n.label >> o) & 1));
        n.label = v ? 1 : 0;
    }
    return Diagram(d.vars(), std::move(nodes), 1);
}

} // namespace

Diagram project_outputs_or(const Diagram& d, const std::vector<int>& outputs) {
    return relabel_sinks(d, outputs, true);
}

Diagram project_output(const Diagram& d, int output) { return relabel_sinks(d, {output}, true); }

DiagramBuilder::DiagramBuilder(std::vector<VarId> vars, int outputs)
    : vars_(std::move(vars)), outputs_(outputs) {}

std::uint32_t DiagramBuilder::add(const Node& n) {
    nodes_.push_back(n);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::uint32_t DiagramBuilder::sink(std::uint32_t label) { return add(Node::sink(label)); }

std::uint32_t DiagramBuilder::decision(std::uint32_t var, std::uint32_t lo, std::uint32_t hi) {
    return add(Node::decision(var, lo, hi));
}

Diagram DiagramBuilder::finalize(std::uint32_t root) && {
    if (root >= nodes_.size()) raise(errc::invalid_diagram, "builder root out of range");
    // iterative post-order over handles: children first, deterministic
    std::vector<std::uint32_t> order;
    std::vector<char> state(nodes_.size(), 0); // 0 new, 1 open, 2 done
    std::vector<std::uint32_t> stack = {root};
    while (!stack.empty()) {
        std::uint32_t h = stack.back();
        if (state[h] == 2) {
            stack.pop_back();
            continue;
        }
        const Node& n = nodes_[h];
        if (state[h] == 0) {
            state[h] = 1;
            if (n.kind != NodeKind::sink) {
                if (n.kind == NodeKind::decision || n.is_binary()) {
                    if (n.b >= nodes_.size() || n.a >= nodes_.size())
                        raise(errc::invalid_diagram, "builder child handle out of range");
                    if (state[n.b] == 1 || state[n.a] == 1)
                        raise(errc::invalid_diagram, "builder graph has a cycle");
                    if (state[n.b] == 0) stack.push_back(n.b);
                    if (state[n.a] == 0) stack.push_back(n.a);
                } else {
                    if (n.a >= nodes_.size())
                        raise(errc::invalid_diagram, "builder child handle out of range");
                    if (state[n.a] == 1) raise(errc::invalid_diagram, "builder graph has a cycle");
                    if (state[n.a] == 0) stack.push_back(n.a);
                }
                continue;
            }
        }
        state[h] = 2;
        order.push_back(h);
        stack.pop_back();
    }
    std::vector<std::uint32_t> remap(nodes_.size());
    std::vector<Node> out;
    out.reserve(order.size());
    for (std::uint32_t h : order) {
        Node n = nodes_[h];
        if (n.kind != NodeKind::sink) {
            n.a = remap[n.a];
            if (n.kind == NodeKind::decision || n.is_binary()) n.b = remap[n.b];
        }
        remap[h] = static_cast<std::uint32_t>(out.size());
        out.push_back(n);
    }
    return Diagram(std::move(vars_), std::move(out), outputs_);
}

} // namespace wmclab
