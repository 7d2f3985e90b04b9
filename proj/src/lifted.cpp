#include "wmclab/lifted.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "wmclab/assignment.hpp"
#include "wmclab/diagram.hpp"
#include "wmclab/errors.hpp"
#include "wmclab/transforms.hpp"

namespace wmclab {

std::vector<std::vector<int>> positive_cnf(const CombinatorFn& f) {
    if (!f.is_monotone()) raise(errc::not_monotone, "positive_cnf: combinator is not monotone");
    const int m = f.arity();
    const std::uint32_t all = (1u << m) - 1;
    // a positive clause is an implicate iff f is false with the clause
    // variables 0 and everything else 1; implicates are upward closed, so
    // the prime ones are those that stay implicates under no single drop
    auto implicate = [&](std::uint32_t c) { return !f.eval_index(all & ~c); };
    std::vector<std::vector<int>> clauses;
    for (std::uint32_t c = 0; c <= all; ++c) {
        if (!implicate(c)) continue;
        bool prime = true;
        for (int v = 0; v < m && prime; ++v)
            if ((c >> v) & 1) prime &= !implicate(c & ~(1u << v));
        if (!prime) continue;
        std::vector<int> clause;
        for (int v = 0; v < m; ++v)
            if ((c >> v) & 1) clause.push_back(v);
        clauses.push_back(std::move(clause));
    }
    return clauses;
}

ClauseLattice build_lattice_and_mobius(int arity, const std::vector<std::vector<int>>& clauses) {
    if (arity < 1 || arity > CombinatorFn::max_arity)
        raise(errc::unsupported, "build_lattice_and_mobius: arity out of range");
    if (clauses.empty())
        raise(errc::unsupported, "build_lattice_and_mobius: at least one clause required");

    ClauseLattice lat;
    lat.arity_ = arity;
    lat.clauses_ = clauses;
    std::vector<std::uint32_t> clause_masks;
    for (const std::vector<int>& clause : clauses) {
        if (clause.empty())
            raise(errc::unsupported, "build_lattice_and_mobius: empty clause (constant false)");
        std::uint32_t mask = 0;
        for (int v : clause) {
            if (v < 0 || v >= arity)
                raise(errc::unsupported, "build_lattice_and_mobius: clause index out of range");
            mask |= 1u << v;
        }
        clause_masks.push_back(mask);
        lat.bottom_ |= mask;
    }

    // closure under union: every union of clauses is a fold of single-clause
    // unions, so a worklist over clause joins reaches all of them
    std::set<std::uint32_t> seen(clause_masks.begin(), clause_masks.end());
    seen.insert(0); // the empty union is the top element
    std::vector<std::uint32_t> work(seen.begin(), seen.end());
    while (!work.empty()) {
        std::uint32_t u = work.back();
        work.pop_back();
        for (std::uint32_t c : clause_masks)
            if (seen.insert(u | c).second) work.push_back(u | c);
    }

    lat.elements_.assign(seen.begin(), seen.end());
    std::sort(lat.elements_.begin(), lat.elements_.end(), [](std::uint32_t a, std::uint32_t b) {
        return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
    });

    lat.mobius_.resize(lat.elements_.size());
    for (std::size_t i = 0; i < lat.elements_.size(); ++i) {
        std::uint32_t u = lat.elements_[i];
        if (u == 0) {
            lat.mobius_[i] = 1;
            continue;
        }
        std::int64_t sum = 0;
        for (std::size_t j = 0; j < i; ++j) {
            std::uint32_t w = lat.elements_[j];
            if (w != u && (w & u) == w) sum += lat.mobius_[j];
        }
        lat.mobius_[i] = -sum;
    }
    return lat;
}

std::int64_t ClauseLattice::mobius(std::uint32_t element) const {
    auto it = std::find(elements_.begin(), elements_.end(), element);
    if (it == elements_.end())
        raise(errc::unsupported, "ClauseLattice::mobius: not a lattice element");
    return mobius_[static_cast<std::size_t>(it - elements_.begin())];
}

bool is_safe(const CombinatorFn& f) {
    if (f.is_constant()) raise(errc::unsupported, "is_safe: constant combinator");
    ClauseLattice lat = build_lattice_and_mobius(f.arity(), positive_cnf(f));
    return lat.mobius(lat.bottom()) == 0;
}

LiftedResult lifted_wmc(const CombinatorFn& f, int k, int n, const WeightMap& w) {
    if (k < 1) raise(errc::unsupported, "lifted_wmc: chain length must be at least 1");
    if (f.arity() != k + 1) raise(errc::unsupported, "lifted_wmc: combinator arity must be k+1");
    if (n < 1) raise(errc::empty_domain, "lifted_wmc: empty domain");
    if (!is_safe(f))
        raise(errc::unsafe_query,
              "lifted_wmc: mu(bottom, top) is nonzero, so weighted model counting for this "
              "query is #P-hard");

    ClauseLattice lat = build_lattice_and_mobius(f.arity(), positive_cnf(f));
    const std::uint32_t full = (1u << (k + 1)) - 1;
    LiftedResult res;
    for (std::uint32_t u : lat.elements()) {
        if (u == lat.top()) continue;
        std::int64_t mu = lat.mobius(u);
        if (mu == 0) continue;
        if (u == full)
            raise(errc::internal_safety_violation,
                  "lifted_wmc: a contributing term covers the whole family and has no "
                  "transversal-free diagram");
        std::vector<int> subset;
        for (int l = 0; l <= k; ++l)
            if ((u >> l) & 1) subset.push_back(l);
        Diagram d = build_family_obdd(Assignment{}, subset, k, n);
        Rational pr = wmc(project_outputs_or(d, subset), w)[0];
        res.obdd_nodes += d.size();
        res.probability -= mu * pr;
        res.terms.push_back({std::move(subset), mu, std::move(pr)});
    }

    // each per-term diagram is transversal-free, so the total work stays
    // within |lattice| * 64 * k * 2^k * n^2
    mpz_class bound = 64 * mpz_class(static_cast<unsigned long>(lat.elements().size())) * k;
    bound *= static_cast<unsigned long>(n) * static_cast<unsigned long>(n);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    if (mpz_class(static_cast<unsigned long>(res.obdd_nodes)) > bound)
        raise(errc::internal_safety_violation, "lifted_wmc: per-term diagrams exceeded the "
                                               "transversal-free work bound");
    return res;
}

} // namespace wmclab
