#include "wmclab/assignment.hpp"

#include <sstream>

#include "wmclab/errors.hpp"

namespace wmclab {

void Assignment::set(const VarId& var, bool value) {
    auto [it, inserted] = map_.emplace(var, value);
    if (!inserted && it->second != value)
        raise(errc::invalid_assignment, "conflicting bindings for " + var.str());
}

void Assignment::merge(const Assignment& other) {
    for (const auto& [var, value] : other) set(var, value);
}

Assignment Assignment::merged(const Assignment& a, const Assignment& b) {
    Assignment out = a;
    out.merge(b);
    return out;
}

Assignment Assignment::parse(const std::string& text) {
    Assignment out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name, value;
        if (!(ls >> name)) continue;
        if (!(ls >> value) || (value != "0" && value != "1"))
            raise(errc::parse_error, "expected 'var 0|1', got '" + line + "'");
        std::string extra;
        if (ls >> extra) raise(errc::parse_error, "trailing text in '" + line + "'");
        out.set(VarId::parse(name), value == "1");
    }
    return out;
}

std::string Assignment::str() const {
    std::ostringstream os;
    for (const auto& [var, value] : map_) os << var.str() << ' ' << (value ? 1 : 0) << '\n';
    return os.str();
}

} // namespace wmclab
