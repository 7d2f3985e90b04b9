#include "wmclab/weights.hpp"

#include <sstream>

#include "wmclab/errors.hpp"

namespace wmclab {

WeightMap::WeightMap(Rational default_weight) : default_(std::move(default_weight)) {
    if (!is_probability(default_))
        raise(errc::invalid_assignment, "default weight outside [0,1]");
}

void WeightMap::set(const VarId& var, Rational p) {
    if (!is_probability(p))
        raise(errc::invalid_assignment, "weight for " + var.str() + " outside [0,1]");
    map_[var] = std::move(p);
}

WeightMap WeightMap::parse(const std::string& text) {
    WeightMap out;
    std::istringstream in(text);
    std::string line;
    bool first_content = true;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name, value;
        if (!(ls >> name)) continue;
        if (!(ls >> value)) raise(errc::parse_error, "expected 'var p', got '" + line + "'");
        std::string extra;
        if (ls >> extra) raise(errc::parse_error, "trailing text in '" + line + "'");
        Rational p = parse_rational(value);
        if (!is_probability(p)) raise(errc::invalid_assignment, "weight outside [0,1]: " + line);
        if (first_content && name == "default") {
            out.default_ = p;
        } else {
            out.set(VarId::parse(name), p);
        }
        first_content = false;
    }
    return out;
}

std::string WeightMap::str() const {
    std::ostringstream os;
    os << "default " << rational_string(default_) << '\n';
    for (const auto& [var, p] : map_) os << var.str() << ' ' << rational_string(p) << '\n';
    return os.str();
}

} // namespace wmclab
