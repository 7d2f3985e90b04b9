#include "wmclab/oracle.hpp"

#include <algorithm>
#include <functional>

#include "wmclab/errors.hpp"

namespace wmclab {

namespace {

// Shared enumeration core.  Terms are precompiled to bitmasks over the
// support; the weight product is maintained along a branching recursion so
// each of the 2^V leaves costs O(terms) mask checks and O(1) amortized
// rational multiplications.
struct MaskTerm {
    std::uint64_t mask;
};

struct Enumerator {
    std::vector<VarId> vars;
    // groups[g] = list of term masks for argument g
    std::vector<std::vector<std::uint64_t>> groups;
    std::function<bool(const std::vector<bool>&)> accept; // over group values

    Rational weighted(const WeightMap& w) const {
        std::vector<Rational> p1(vars.size()), p0(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) {
            p1[i] = w.get(vars[i]);
            p0[i] = Rational(1) - p1[i];
        }
        Rational total = 0;
        std::vector<bool> argv(groups.size());
        std::function<void(std::size_t, std::uint64_t, Rational)> rec =
            [&](std::size_t depth, std::uint64_t bits, Rational weight) {
                if (depth == vars.size()) {
                    for (std::size_t g = 0; g < groups.size(); ++g) {
                        argv[g] = false;
                        for (std::uint64_t m : groups[g])
                            if ((bits & m) == m) {
                                argv[g] = true;
                                break;
                            }
                    }
                    if (accept(argv)) total += weight;
                    return;
                }
                rec(depth + 1, bits, weight * p0[depth]);
                rec(depth + 1, bits | (1ull << depth), weight * p1[depth]);
            };
        rec(0, 0, Rational(1));
        return total;
    }

    std::uint64_t count() const {
        std::uint64_t total = 0;
        std::vector<bool> argv(groups.size());
        for (std::uint64_t bits = 0; bits < (1ull << vars.size()); ++bits) {
            for (std::size_t g = 0; g < groups.size(); ++g) {
                argv[g] = false;
                for (std::uint64_t m : groups[g])
                    if ((bits & m) == m) {
                        argv[g] = true;
                        break;
                    }
            }
            if (accept(argv)) ++total;
        }
        return total;
    }
};

std::vector<std::uint64_t> masks_for(const MonotoneDnf& phi, const std::vector<VarId>& vars) {
    std::vector<std::uint64_t> out;
    out.reserve(phi.term_count());
    for (const Term& t : phi.terms()) {
        std::uint64_t m = 0;
        for (const VarId& v : t) {
            auto it = std::lower_bound(vars.begin(), vars.end(), v);
            m |= 1ull << static_cast<std::uint64_t>(it - vars.begin());
        }
        out.push_back(m);
    }
    return out;
}

void check_cap(std::size_t nvars, std::size_t cap) {
    if (nvars > cap)
        raise(errc::too_large, "enumeration over " + std::to_string(nvars) +
                                   " variables exceeds cap " + std::to_string(cap));
}

} // namespace

Rational brute_force_wmc(const MonotoneDnf& phi, const WeightMap& w, std::size_t cap) {
    if (phi.is_true()) return Rational(1);
    if (phi.is_false()) return Rational(0);
    Enumerator e;
    e.vars = phi.support();
    check_cap(e.vars.size(), cap);
    e.groups = {masks_for(phi, e.vars)};
    e.accept = [](const std::vector<bool>& a) { return a[0]; };
    return e.weighted(w);
}

Rational brute_force_wmc(const CompositeLineage& psi, const WeightMap& w, std::size_t cap) {
    Enumerator e;
    e.vars = psi.support();
    check_cap(e.vars.size(), cap);
    const CombinatorFn& f = psi.combinator();
    std::vector<int> live; // slot index per group
    for (int l = 0; l < f.arity(); ++l)
        if (!psi.slots()[static_cast<std::size_t>(l)].fixed) {
            e.groups.push_back(
                masks_for(psi.slots()[static_cast<std::size_t>(l)].dnf, e.vars));
            live.push_back(l);
        }
    e.accept = [&](const std::vector<bool>& argv) {
        std::vector<bool> full(static_cast<std::size_t>(f.arity()));
        std::size_t g = 0;
        for (int l = 0; l < f.arity(); ++l) {
            const ArgSlot& s = psi.slots()[static_cast<std::size_t>(l)];
            full[static_cast<std::size_t>(l)] = s.fixed ? s.value : argv[g++];
        }
        return f.eval(full);
    };
    return e.weighted(w);
}

std::uint64_t brute_force_count(const MonotoneDnf& phi, std::size_t cap) {
    if (phi.is_true()) return 1;
    if (phi.is_false()) return 0;
    Enumerator e;
    e.vars = phi.support();
    check_cap(e.vars.size(), cap);
    e.groups = {masks_for(phi, e.vars)};
    e.accept = [](const std::vector<bool>& a) { return a[0]; };
    return e.count();
}

} // namespace wmclab
