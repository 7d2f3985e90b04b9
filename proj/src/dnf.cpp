#include "wmclab/dnf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "wmclab/errors.hpp"

namespace wmclab {

namespace {

// Canonical minimization: sort, dedupe, and drop every term that strictly
// contains another term.  Quadratic pairwise subset checks are fine at desk
// scale, but restriction inside the compiler calls this millions of times, so
// small terms (the common case: grounded lineages have terms of size <= 3)
// take a subset-enumeration path over a hash set instead.
struct TermHash {
    std::size_t operator()(const Term& t) const {
        std::size_t h = 1469598103934665603ull;
        for (const VarId& v : t) {
            auto mix = [&](std::size_t x) {
                h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            };
            mix(static_cast<std::size_t>(v.kind));
            mix(v.level);
            mix(v.row);
            mix(v.col);
            mix(std::hash<std::string>{}(v.name));
        }
        return h;
    }
};

bool is_subset(const Term& a, const Term& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void minimize(std::vector<Term>& terms) {
    for (Term& t : terms) {
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        if (t.empty()) {
            terms.assign(1, Term{});
            return;
        }
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    std::size_t max_size = 0;
    for (const Term& t : terms) max_size = std::max(max_size, t.size());

    std::vector<Term> kept;
    kept.reserve(terms.size());
    if (max_size <= 8) {
        std::unordered_set<Term, TermHash> all(terms.begin(), terms.end());
        for (const Term& t : terms) {
            bool absorbed = false;
            // enumerate proper non-empty subsets of t
            std::size_t m = t.size();
            for (std::size_t mask = 1; mask + 1 < (1ull << m) && !absorbed; ++mask) {
                Term sub;
                for (std::size_t b = 0; b < m; ++b)
                    if (mask & (1ull << b)) sub.push_back(t[b]);
                absorbed = all.count(sub) != 0;
            }
            if (!absorbed) kept.push_back(t);
        }
    } else {
        for (std::size_t i = 0; i < terms.size(); ++i) {
            bool absorbed = false;
            for (std::size_t j = 0; j < terms.size() && !absorbed; ++j)
                absorbed = i != j && terms[j].size() < terms[i].size() &&
                           is_subset(terms[j], terms[i]);
            // equal-size distinct terms never absorb each other; duplicates
            // are already gone
            if (!absorbed) kept.push_back(terms[i]);
        }
    }
    terms = std::move(kept);
}

} // namespace

MonotoneDnf::MonotoneDnf(std::vector<Term> terms) : terms_(std::move(terms)) {
    minimize(terms_);
}

std::vector<VarId> MonotoneDnf::support() const {
    std::set<VarId> vars;
    for (const Term& t : terms_) vars.insert(t.begin(), t.end());
    return {vars.begin(), vars.end()};
}

std::size_t MonotoneDnf::support_size() const { return support().size(); }

bool MonotoneDnf::evaluate(const Assignment& theta) const {
    for (const Term& t : terms_) {
        bool sat = true;
        for (const VarId& v : t) {
            auto val = theta.get(v);
            if (!val) raise(errc::unbound_variable, v.str() + " has no value");
            if (!*val) {
                sat = false;
                break;
            }
        }
        if (sat) return true;
    }
    return false;
}

MonotoneDnf MonotoneDnf::disjoin(const MonotoneDnf& a, const MonotoneDnf& b) {
    std::vector<Term> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return MonotoneDnf(std::move(terms));
}

MonotoneDnf MonotoneDnf::parse(const std::string& text) {
    std::vector<Term> terms;
    std::istringstream in(text);
    std::string line;
    bool saw_true = false, saw_anything = false;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        Term term;
        bool any = false;
        while (ls >> tok) {
            any = true;
            if (tok == "TRUE") {
                saw_true = true;
            } else if (tok == "FALSE") {
                // contributes nothing
            } else {
                term.push_back(VarId::parse(tok));
            }
        }
        if (!any) continue;
        saw_anything = true;
        if (saw_true) continue;
        if (!term.empty()) terms.push_back(std::move(term));
    }
    if (!saw_anything) raise(errc::parse_error, "empty formula text");
    if (saw_true) return MonotoneDnf::truth();
    return MonotoneDnf(std::move(terms));
}

std::string MonotoneDnf::str() const {
    if (is_false()) return "FALSE\n";
    if (is_true()) return "TRUE\n";
    std::ostringstream os;
    for (const Term& t : terms_) {
        for (std::size_t i = 0; i < t.size(); ++i) os << (i ? " " : "") << t[i].str();
        os << '\n';
    }
    return os.str();
}

MonotoneDnf restrict_dnf(const MonotoneDnf& phi, const Assignment& theta) {
    if (theta.empty() || phi.is_constant()) return phi;
    std::vector<Term> out;
    out.reserve(phi.term_count());
    for (const Term& t : phi.terms()) {
        Term kept;
        bool dead = false;
        for (const VarId& v : t) {
            auto val = theta.get(v);
            if (!val) {
                kept.push_back(v);
            } else if (!*val) {
                dead = true;
                break;
            }
        }
        if (dead) continue;
        if (kept.empty()) return MonotoneDnf::truth();
        out.push_back(std::move(kept));
    }
    return MonotoneDnf(std::move(out));
}

std::vector<VarId> units(const MonotoneDnf& phi) {
    if (phi.is_constant())
        raise(errc::constant_formula, "units undefined on a constant formula");
    std::vector<VarId> out;
    for (const Term& t : phi.terms())
        if (t.size() == 1) out.push_back(t[0]);
    return out;
}

std::size_t degree_bound(const MonotoneDnf& phi, const VarId& x) {
    std::set<VarId> others;
    for (const Term& t : phi.terms()) {
        if (!std::binary_search(t.begin(), t.end(), x)) continue;
        for (const VarId& v : t)
            if (!(v == x)) others.insert(v);
    }
    return others.size();
}

std::size_t degree_bound_max(const MonotoneDnf& phi) {
    std::size_t best = 0;
    for (const VarId& v : phi.support()) best = std::max(best, degree_bound(phi, v));
    return best;
}

std::vector<MonotoneDnf> components(const MonotoneDnf& phi) {
    if (phi.is_constant())
        raise(errc::constant_formula, "components undefined on a constant formula");

    std::vector<VarId> vars = phi.support();
    auto index_of = [&](const VarId& v) {
        return static_cast<std::size_t>(
            std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
    };

    std::vector<std::size_t> parent(vars.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

    for (const Term& t : phi.terms())
        for (std::size_t i = 1; i < t.size(); ++i)
            unite(index_of(t[0]), index_of(t[i]));

    std::map<std::size_t, std::vector<Term>> groups;
    for (const Term& t : phi.terms()) groups[find(index_of(t[0]))].push_back(t);

    std::vector<MonotoneDnf> out;
    out.reserve(groups.size());
    for (auto& [root, terms] : groups) out.emplace_back(std::move(terms));
    return out;
}

} // namespace wmclab
