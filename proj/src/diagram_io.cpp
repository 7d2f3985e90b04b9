#include "wmclab/diagram_io.hpp"

#include <sstream>

#include "wmclab/errors.hpp"

namespace wmclab {

std::string print_mdd(const Diagram& d) {
    std::ostringstream out;
    out << "mdd " << d.size() << ' ' << d.vars().size() << ' ' << d.outputs() << '\n';
    for (const Node& n : d.nodes()) {
        switch (n.kind) {
            case NodeKind::sink:
                out << 'S';
                for (int o = 0; o < d.outputs(); ++o) out << ' ' << ((n.label >> o) & 1);
                out << '\n';
                break;
            case NodeKind::decision:
                out << "D " << n.var << ' ' << n.a << ' ' << n.b << '\n';
                break;
            case NodeKind::op_and: out << "A " << n.a << ' ' << n.b << '\n'; break;
            case NodeKind::op_or: out << "O " << n.a << ' ' << n.b << '\n'; break;
            case NodeKind::op_xor: out << "X " << n.a << ' ' << n.b << '\n'; break;
            case NodeKind::op_equiv: out << "E " << n.a << ' ' << n.b << '\n'; break;
            case NodeKind::op_not: out << "N " << n.a << '\n'; break;
            case NodeKind::noop: out << "P " << n.a << '\n'; break;
        }
    }
    for (std::size_t i = 0; i < d.vars().size(); ++i)
        out << "map " << i << ' ' << d.vars()[i].str() << '\n';
    return out.str();
}

namespace {

std::vector<std::string> content_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto end = line.find_last_not_of(" \t\r");
        if (end == std::string::npos) continue;
        line.erase(end + 1);
        lines.push_back(line);
    }
    return lines;
}

std::uint32_t take_u32(std::istringstream& in, const std::string& line) {
    long long v = -1;
    if (!(in >> v) || v < 0 || v > 0xffffffffll)
        raise(errc::parse_error, "bad field in line: " + line);
    return static_cast<std::uint32_t>(v);
}

void expect_end(std::istringstream& in, const std::string& line) {
    std::string rest;
    if (in >> rest) raise(errc::parse_error, "trailing text in line: " + line);
}

} // namespace

Diagram parse_mdd(const std::string& text) {
    std::vector<std::string> lines = content_lines(text);
    if (lines.empty()) raise(errc::parse_error, "empty diagram text");
    std::istringstream head(lines[0]);
    std::string tag;
    head >> tag;
    if (tag != "mdd") raise(errc::parse_error, "expected 'mdd' header, got: " + lines[0]);
    std::uint32_t num_nodes = take_u32(head, lines[0]);
    std::uint32_t num_vars = take_u32(head, lines[0]);
    std::uint32_t num_outputs = take_u32(head, lines[0]);
    expect_end(head, lines[0]);
    if (lines.size() < 1 + num_nodes || lines.size() > 1 + num_nodes + num_vars)
        raise(errc::parse_error, "expected " + std::to_string(num_nodes) +
                                     " node lines plus up to " + std::to_string(num_vars) +
                                     " map lines, got " + std::to_string(lines.size() - 1));

    std::vector<Node> nodes;
    nodes.reserve(num_nodes);
    for (std::uint32_t i = 0; i < num_nodes; ++i) {
        const std::string& line = lines[1 + i];
        std::istringstream in(line);
        std::string op;
        in >> op;
        if (op == "S") {
            std::uint32_t label = 0;
            for (std::uint32_t o = 0; o < num_outputs; ++o) {
                std::uint32_t bit = take_u32(in, line);
                if (bit > 1) raise(errc::parse_error, "sink bits must be 0 or 1: " + line);
                label |= bit << o;
            }
            nodes.push_back(Node::sink(label));
        } else if (op == "D") {
            std::uint32_t var = take_u32(in, line);
            std::uint32_t lo = take_u32(in, line);
            std::uint32_t hi = take_u32(in, line);
            nodes.push_back(Node::decision(var, lo, hi));
        } else if (op == "A" || op == "O" || op == "X" || op == "E") {
            NodeKind kind = op == "A"   ? NodeKind::op_and
                            : op == "O" ? NodeKind::op_or
                            : op == "X" ? NodeKind::op_xor
                                        : NodeKind::op_equiv;
            std::uint32_t l = take_u32(in, line);
            std::uint32_t r = take_u32(in, line);
            nodes.push_back(Node::binary(kind, l, r));
        } else if (op == "N") {
            nodes.push_back(Node::op_not(take_u32(in, line)));
        } else if (op == "P") {
            nodes.push_back(Node::noop(take_u32(in, line)));
        } else {
            raise(errc::parse_error, "unknown node kind in line: " + line);
        }
        expect_end(in, line);
    }

    std::vector<VarId> vars(num_vars);
    std::vector<char> seen(num_vars, 0);
    for (std::size_t li = 1 + num_nodes; li < lines.size(); ++li) {
        const std::string& line = lines[li];
        std::istringstream in(line);
        std::string tag2, name;
        in >> tag2;
        if (tag2 != "map") raise(errc::parse_error, "expected map line, got: " + line);
        std::uint32_t index = take_u32(in, line);
        if (!(in >> name)) raise(errc::parse_error, "map line lacks a name: " + line);
        expect_end(in, line);
        if (index >= num_vars || seen[index])
            raise(errc::parse_error, "bad or repeated map index in line: " + line);
        seen[index] = 1;
        vars[index] = VarId::parse(name);
    }
    for (std::uint32_t i = 0; i < num_vars; ++i)
        if (!seen[i]) vars[i] = VarId::sym("v" + std::to_string(i));
    return Diagram(std::move(vars), std::move(nodes), static_cast<int>(num_outputs));
}

std::string print_dot(const Diagram& d) {
    std::ostringstream out;
    out << "digraph mdd {\n  rankdir=TB;\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Node& n = d.nodes()[i];
        out << "  n" << i << " [";
        switch (n.kind) {
            case NodeKind::sink: {
                out << "shape=box,label=\"";
                for (int o = 0; o < d.outputs(); ++o) out << ((n.label >> o) & 1);
                out << "\"";
                break;
            }
            case NodeKind::decision:
                out << "shape=circle,label=\"" << d.vars()[n.var].str() << "\"";
                break;
            case NodeKind::op_and: out << "shape=circle,label=\"AND\""; break;
            case NodeKind::op_or: out << "shape=circle,label=\"OR\""; break;
            case NodeKind::op_xor: out << "shape=circle,label=\"XOR\""; break;
            case NodeKind::op_equiv: out << "shape=circle,label=\"EQUIV\""; break;
            case NodeKind::op_not: out << "shape=circle,label=\"NOT\""; break;
            case NodeKind::noop: out << "shape=circle,label=\"noop\""; break;
        }
        out << "];\n";
        if (n.kind == NodeKind::decision) {
            out << "  n" << i << " -> n" << n.a << " [style=dashed];\n";
            out << "  n" << i << " -> n" << n.b << ";\n";
        } else if (n.is_binary()) {
            out << "  n" << i << " -> n" << n.a << ";\n";
            out << "  n" << i << " -> n" << n.b << ";\n";
        } else if (n.kind != NodeKind::sink) {
            out << "  n" << i << " -> n" << n.a << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace wmclab
