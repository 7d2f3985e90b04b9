#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wmclab/errors.hpp"
#include "wmclab/transforms.hpp"

namespace wmclab {
namespace {

void require_single_output_fbdd(const Diagram& f, const char* op) {
    if (!validate(f).within(DiagramClass::fbdd))
        raise(errc::invalid_diagram, std::string(op) + ": input does not validate as an FBDD");
    if (f.outputs() != 1)
        raise(errc::unsupported, std::string(op) + ": single-output diagrams only");
}

std::vector<VarId> units_or_empty(const MonotoneDnf& d) {
    if (d.is_constant()) return {};
    return units(d);
}

/// phi restricted along one root path per node, chosen deterministically:
/// scanning nodes from the root downward, the first parent to reach a node
/// fixes its residual.  When f computes phi the residual of a node is the
/// same function no matter which path produced it.  Unreachable nodes stay
/// disengaged.
std::vector<std::optional<MonotoneDnf>> representative_residuals(const Diagram& f,
                                                                 const MonotoneDnf& phi) {
    std::vector<std::optional<MonotoneDnf>> residual(f.size());
    residual[f.root()] = phi;
    for (std::uint32_t u = f.root() + 1; u-- > 0;) {
        if (!residual[u]) continue;
        const Node& node = f.nodes()[u];
        if (node.kind == NodeKind::noop) {
            if (!residual[node.a]) residual[node.a] = *residual[u];
        } else if (node.kind == NodeKind::decision) {
            for (bool value : {false, true}) {
                std::uint32_t child = value ? node.b : node.a;
                if (residual[child]) continue;
                Assignment one;
                one.set(f.vars()[node.var], value);
                residual[child] = restrict_dnf(*residual[u], one);
            }
        }
    }
    return residual;
}

/// Units created along each (node, value) edge: units of the restricted
/// residual minus units already present at the node.  Indexed 2*node+value.
std::vector<std::vector<VarId>> edge_units_of(const Diagram& f,
                                              const std::vector<std::optional<MonotoneDnf>>& residual) {
    std::vector<std::vector<VarId>> out(2 * f.size());
    for (std::uint32_t u = 0; u < f.size(); ++u) {
        if (!residual[u] || f.nodes()[u].kind != NodeKind::decision) continue;
        const std::vector<VarId> base = units_or_empty(*residual[u]);
        for (bool value : {false, true}) {
            Assignment one;
            one.set(f.vars()[f.nodes()[u].var], value);
            const std::vector<VarId> next = units_or_empty(restrict_dnf(*residual[u], one));
            std::set_difference(next.begin(), next.end(), base.begin(), base.end(),
                                std::back_inserter(out[2 * u + (value ? 1 : 0)]));
        }
    }
    return out;
}

} // namespace

UnitLedger unit_ledger(const Diagram& f, const MonotoneDnf& phi) {
    require_single_output_fbdd(f, "unit_ledger");
    UnitLedger ledger;
    ledger.edge_units = edge_units_of(f, representative_residuals(f, phi));
    ledger.root_units = units_or_empty(phi);
    return ledger;
}

bool follows_unit_rule(const Diagram& f, const MonotoneDnf& phi) {
    require_single_output_fbdd(f, "follows_unit_rule");
    const auto residual = representative_residuals(f, phi);
    for (std::uint32_t u = 0; u < f.size(); ++u) {
        if (!residual[u] || f.nodes()[u].kind != NodeKind::decision) continue;
        const std::vector<VarId> here = units_or_empty(*residual[u]);
        if (here.empty()) continue;
        if (!std::binary_search(here.begin(), here.end(), f.vars()[f.nodes()[u].var]))
            return false;
    }
    return true;
}

Diagram to_unit_rule(const Diagram& f, const MonotoneDnf& phi) {
    require_single_output_fbdd(f, "to_unit_rule");
    const auto residual = representative_residuals(f, phi);
    const auto edge_units = edge_units_of(f, residual);
    const std::vector<VarId> root_units = units_or_empty(phi);

    // merged variable table: f's own plus formula variables it never tests
    std::vector<VarId> vars = f.vars();
    std::map<VarId, std::uint32_t> slot_of;
    for (std::uint32_t i = 0; i < vars.size(); ++i) slot_of.emplace(vars[i], i);
    for (const VarId& v : phi.support())
        if (slot_of.count(v) == 0) {
            slot_of.emplace(v, static_cast<std::uint32_t>(vars.size()));
            vars.push_back(v);
        }

    // chained-above marks: a variable is consumed at a node when some path
    // to it already carries the variable through a chain; read-once of f
    // makes collapsing such re-tests sound on every path
    const std::size_t words = (vars.size() + 63) / 64;
    std::vector<std::uint64_t> consumed(f.size() * words, 0);
    auto mark = [&](std::uint32_t node, const VarId& v) {
        const std::uint32_t s = slot_of.at(v);
        consumed[node * words + s / 64] |= std::uint64_t{1} << (s % 64);
    };
    auto is_consumed = [&](std::uint32_t node, std::uint32_t slot) {
        return ((consumed[node * words + slot / 64] >> (slot % 64)) & 1) != 0;
    };
    auto flow = [&](std::uint32_t from, std::uint32_t to) {
        for (std::size_t w = 0; w < words; ++w)
            consumed[to * words + w] |= consumed[from * words + w];
    };

    for (const VarId& z : root_units) mark(f.root(), z);
    for (std::uint32_t u = f.root() + 1; u-- > 0;) {
        if (!residual[u]) continue;
        const Node& node = f.nodes()[u];
        if (node.kind == NodeKind::noop) {
            flow(u, node.a);
        } else if (node.kind == NodeKind::decision) {
            for (bool value : {false, true}) {
                const std::uint32_t child = value ? node.b : node.a;
                flow(u, child);
                for (const VarId& z : edge_units[2 * u + (value ? 1 : 0)]) mark(child, z);
            }
        }
    }

    // bottom-up rebuild with unit chains spliced into every edge
    DiagramBuilder builder(vars, 1);
    const std::uint32_t one = builder.sink(1);
    const std::uint32_t zero = builder.sink(0);
    // chain testing zs in order: a 1 exits to the 1-sink, 0 continues
    auto chain_from = [&](std::uint32_t target, const std::vector<VarId>& zs) {
        std::uint32_t h = target;
        for (auto it = zs.rbegin(); it != zs.rend(); ++it)
            h = builder.decision(slot_of.at(*it), h, one);
        return h;
    };

    std::vector<std::uint32_t> map(f.size(), 0);
    for (std::uint32_t u = 0; u <= f.root(); ++u) {
        if (!residual[u]) continue;
        const Node& node = f.nodes()[u];
        switch (node.kind) {
        case NodeKind::sink:
            map[u] = (node.label & 1) ? one : zero;
            break;
        case NodeKind::noop:
            map[u] = builder.add(Node::noop(map[node.a]));
            break;
        case NodeKind::decision: {
            const std::uint32_t lo = chain_from(map[node.a], edge_units[2 * u]);
            if (is_consumed(u, node.var)) {
                map[u] = builder.add(Node::noop(lo));
            } else {
                const std::uint32_t hi = chain_from(map[node.b], edge_units[2 * u + 1]);
                map[u] = builder.decision(node.var, lo, hi);
            }
            break;
        }
        default:
            raise(errc::invalid_diagram, "to_unit_rule: operator node in an FBDD");
        }
    }

    const std::uint32_t root = chain_from(map[f.root()], root_units);
    return remove_noops(std::move(builder).finalize(root));
}

} // namespace wmclab
