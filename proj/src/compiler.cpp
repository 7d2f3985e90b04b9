#include "wmclab/compiler.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace wmclab {

const char* heuristic_name(Heuristic h) {
    return h == Heuristic::first_unset ? "first-unset" : "max-occurrence";
}

const char* negation_mode_name(NegationMode m) {
    return m == NegationMode::direct_dnf ? "direct-dnf" : "negate-to-cnf";
}

Heuristic parse_heuristic(const std::string& name) {
    if (name == "first-unset") return Heuristic::first_unset;
    if (name == "max-occurrence") return Heuristic::max_occurrence;
    raise(errc::parse_error, "unknown heuristic: " + name);
}

NegationMode parse_negation_mode(const std::string& name) {
    if (name == "direct-dnf") return NegationMode::direct_dnf;
    if (name == "negate-to-cnf") return NegationMode::negate_to_cnf;
    raise(errc::parse_error, "unknown negation mode: " + name);
}

namespace {

// Dense-variable DNF working set: terms are sorted id vectors, the term list
// is lexicographically sorted, unique, and absorption-free.  {} is false,
// {{}} is true.
using Term = std::vector<std::uint32_t>;
using Dnf = std::vector<Term>;

bool dense_true(const Dnf& f) { return f.size() == 1 && f.front().empty(); }
bool dense_false(const Dnf& f) { return f.empty(); }

struct TermHash {
    std::size_t operator()(const Term& t) const {
        std::size_t h = t.size();
        for (std::uint32_t v : t) h = h * 1000003u + v + 0x9e3779b97f4a7c15ull;
        return h;
    }
};

struct DnfHash {
    std::size_t operator()(const Dnf& f) const {
        TermHash th;
        std::size_t h = f.size();
        for (const Term& t : f) h = h * 109951168211ull + th(t);
        return h;
    }
};

struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const {
        std::size_t h = k.size();
        for (std::uint64_t v : k) h = h * 1099511628211ull ^ (v + 0x9e3779b97f4a7c15ull + (h << 6));
        return h;
    }
};

bool proper_subset_possible(const Dnf& f) {
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i].size() != f[0].size()) return true;
    return false;
}

/// Sort, dedupe, and remove absorbed terms (keeping lexicographic order).
Dnf minimize_dense(Dnf f) {
    if (f.empty()) return f;
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.front().empty()) return Dnf{{}}; // the empty term absorbs everything
    if (!proper_subset_possible(f)) return f;

    // visit terms smallest-first so absorbers are already in the kept set
    std::vector<std::uint32_t> order(f.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (f[a].size() != f[b].size()) return f[a].size() < f[b].size();
        return f[a] < f[b];
    });
    std::unordered_set<Term, TermHash> kept;
    std::vector<char> keep(f.size(), 0);
    Term sub;
    for (std::uint32_t i : order) {
        const Term& t = f[i];
        bool absorbed = false;
        if (t.size() <= 16) {
            std::uint32_t full = (1u << t.size()) - 1;
            for (std::uint32_t m = 0; m < full && !absorbed; ++m) {
                sub.clear();
                for (std::size_t b = 0; b < t.size(); ++b)
                    if ((m >> b) & 1) sub.push_back(t[b]);
                absorbed = kept.count(sub) != 0;
            }
        } else {
            for (const Term& k : kept) {
                if (k.size() < t.size() && std::includes(t.begin(), t.end(), k.begin(), k.end())) {
                    absorbed = true;
                    break;
                }
            }
        }
        if (!absorbed) {
            keep[i] = 1;
            kept.insert(t);
        }
    }
    Dnf out;
    out.reserve(kept.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        if (keep[i]) out.push_back(std::move(f[i]));
    return out;
}

Dnf restrict_dense(const Dnf& f, std::uint32_t x, bool val) {
    Dnf out;
    out.reserve(f.size());
    bool shrunk_any = false;
    for (const Term& t : f) {
        auto it = std::lower_bound(t.begin(), t.end(), x);
        if (it != t.end() && *it == x) {
            if (!val) continue;
            if (t.size() == 1) return Dnf{{}}; // satisfied outright
            Term s;
            s.reserve(t.size() - 1);
            s.insert(s.end(), t.begin(), it);
            s.insert(s.end(), it + 1, t.end());
            out.push_back(std::move(s));
            shrunk_any = true;
        } else {
            out.push_back(t);
        }
    }
    if (!shrunk_any) return out; // pure filtering keeps canonical form
    return minimize_dense(std::move(out));
}

CombinatorFn identity_fn() { return CombinatorFn::or_of(1); }
CombinatorFn not_fn() { return CombinatorFn::or_of(1).negate(); }

struct Residual {
    CombinatorFn fn;
    std::vector<Dnf> args;
};

class Compiler {
  public:
    Compiler(const CompositeLineage& psi, const CompileConfig& cfg)
        : cfg_(cfg), support_(psi.support()), builder_(support_, 1) {
        if (cfg_.node_budget == 0) raise(errc::unsupported, "node budget must be positive");
    }

    CompileResult run(const CompositeLineage& psi) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            Residual root{psi.residual_combinator(), {}};
            for (const ArgSlot& slot : psi.slots())
                if (!slot.fixed) root.args.push_back(to_dense(slot.dnf));
            if (cfg_.negation_mode == NegationMode::negate_to_cnf) root.fn = root.fn.negate();
            std::uint32_t r = go(std::move(root));
            if (cfg_.negation_mode == NegationMode::negate_to_cnf)
                r = add_node(Node::op_not(r));
            finish_stats(t0);
            Diagram d = std::move(builder_).finalize(r);
            return {std::move(d), stats_};
        } catch (budget_error&) {
            finish_stats(t0);
            throw budget_error(stats_);
        }
    }

  private:
    void finish_stats(std::chrono::steady_clock::time_point t0) {
        stats_.nodes_created = builder_.count();
        stats_.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    Dnf to_dense(const MonotoneDnf& f) const {
        Dnf out;
        out.reserve(f.terms().size());
        for (const auto& term : f.terms()) {
            Term t;
            t.reserve(term.size());
            for (const VarId& v : term) {
                auto it = std::lower_bound(support_.begin(), support_.end(), v);
                t.push_back(static_cast<std::uint32_t>(it - support_.begin()));
            }
            out.push_back(std::move(t));
        }
        return out; // canonical order carries over from the VarId form
    }

    std::uint32_t add_node(const Node& n) {
        if (builder_.count() >= cfg_.node_budget) throw budget_error(stats_);
        return builder_.add(n);
    }

    std::uint32_t sink(bool v) {
        auto& id = sink_id_[v ? 1 : 0];
        if (!id) id = add_node(Node::sink(v ? 1 : 0));
        return *id;
    }

    /// Fold constant arguments, drop ignored ones, flatten a disjunctive
    /// combinator to a single DNF.  Returns the constant value if the
    /// residual collapsed.
    std::optional<bool> canonicalize(Residual& r) const {
        for (int l = static_cast<int>(r.args.size()) - 1; l >= 0; --l) {
            if (dense_true(r.args[l]) || dense_false(r.args[l])) {
                r.fn = r.fn.restrict_arg(l, dense_true(r.args[l]));
                r.args.erase(r.args.begin() + l);
            }
        }
        if (r.fn.is_constant()) return r.fn.constant_value();
        for (int l = static_cast<int>(r.args.size()) - 1; l >= 0; --l) {
            if (!r.fn.depends_on(l)) {
                r.fn = r.fn.restrict_arg(l, false);
                r.args.erase(r.args.begin() + l);
            }
        }
        int m = r.fn.arity();
        CombinatorFn orm = CombinatorFn::or_of(m);
        if (r.fn == orm || r.fn == orm.negate()) {
            bool negated = !(r.fn == orm);
            if (m > 1) {
                Dnf all;
                for (Dnf& a : r.args)
                    all.insert(all.end(), std::make_move_iterator(a.begin()),
                               std::make_move_iterator(a.end()));
                all = minimize_dense(std::move(all));
                r.args.clear();
                r.args.push_back(std::move(all));
            }
            r.fn = negated ? not_fn() : identity_fn();
        }
        return std::nullopt;
    }

    std::vector<std::uint64_t> make_key(const Residual& r) const {
        std::vector<std::uint64_t> key;
        const auto& words = r.fn.table_words();
        key.reserve(1 + words.size() + r.args.size());
        key.push_back(static_cast<std::uint64_t>(r.fn.arity()));
        key.insert(key.end(), words.begin(), words.end());
        for (const Dnf& a : r.args) {
            auto [it, fresh] = dnf_ids_.emplace(a, static_cast<std::uint32_t>(dnf_ids_.size()));
            (void)fresh;
            key.push_back(0x100000000ull + it->second); // tag to keep ids apart from table data
        }
        return key;
    }

    /// Connected components of a plain DNF by shared variables, ordered by
    /// first appearance (terms stay in canonical order inside each part).
    std::vector<Dnf> split_components(const Dnf& f) const {
        std::vector<std::uint32_t> parent(support_.size());
        std::iota(parent.begin(), parent.end(), 0u);
        auto find = [&](std::uint32_t v) {
            while (parent[v] != v) {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            return v;
        };
        for (const Term& t : f) {
            std::uint32_t r0 = find(t[0]);
            for (std::size_t i = 1; i < t.size(); ++i) parent[find(t[i])] = r0;
        }
        std::vector<Dnf> groups;
        std::unordered_map<std::uint32_t, std::size_t> group_of;
        for (const Term& t : f) {
            auto [it, fresh] = group_of.emplace(find(t[0]), groups.size());
            if (fresh) groups.emplace_back();
            groups[it->second].push_back(t);
        }
        return groups;
    }

    std::uint32_t pick_var(const Residual& r) const {
        if (cfg_.heuristic == Heuristic::first_unset) {
            std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
            for (const Dnf& a : r.args) best = std::min(best, a.front().front());
            return best;
        }
        occ_.assign(support_.size(), 0);
        for (const Dnf& a : r.args)
            for (const Term& t : a)
                for (std::uint32_t v : t) ++occ_[v];
        std::uint32_t best = 0, best_count = 0;
        for (std::uint32_t v = 0; v < occ_.size(); ++v)
            if (occ_[v] > best_count) {
                best = v;
                best_count = occ_[v];
            }
        return best;
    }

    std::uint32_t go(Residual r) {
        if (auto constant = canonicalize(r)) return sink(*constant);

        std::vector<std::uint64_t> key;
        if (cfg_.cache) {
            key = make_key(r);
            auto it = cache_.find(key);
            if (it != cache_.end()) {
                ++stats_.cache_hits;
                return it->second;
            }
        }
        ++stats_.cache_misses;

        std::uint32_t id;
        std::vector<Dnf> comps;
        if (r.fn.arity() == 1) comps = split_components(r.args[0]);
        if (comps.size() >= 2) {
            ++stats_.component_splits;
            bool negated = !(r.fn == identity_fn());
            NodeKind op = negated ? NodeKind::op_and : NodeKind::op_or;
            id = go(Residual{r.fn, {std::move(comps[0])}});
            for (std::size_t c = 1; c < comps.size(); ++c) {
                std::uint32_t next = go(Residual{r.fn, {std::move(comps[c])}});
                id = add_node(Node::binary(op, id, next));
            }
        } else {
            ++stats_.decisions;
            std::uint32_t x = pick_var(r);
            Residual lo{r.fn, {}}, hi{r.fn, {}};
            lo.args.reserve(r.args.size());
            hi.args.reserve(r.args.size());
            for (const Dnf& a : r.args) {
                lo.args.push_back(restrict_dense(a, x, false));
                hi.args.push_back(restrict_dense(a, x, true));
            }
            std::uint32_t a = go(std::move(lo));
            std::uint32_t b = go(std::move(hi));
            id = add_node(Node::decision(x, a, b));
        }
        if (cfg_.cache) cache_.emplace(std::move(key), id);
        return id;
    }

    CompileConfig cfg_;
    std::vector<VarId> support_;
    DiagramBuilder builder_;
    CompileStats stats_;
    std::optional<std::uint32_t> sink_id_[2];
    mutable std::vector<std::uint32_t> occ_;
    mutable std::unordered_map<Dnf, std::uint32_t, DnfHash> dnf_ids_;
    std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, KeyHash> cache_;
};

} // namespace

CompileResult compile(const CompositeLineage& psi, const CompileConfig& cfg) {
    Compiler c(psi, cfg);
    return c.run(psi);
}

CompileResult compile(const MonotoneDnf& f, const CompileConfig& cfg) {
    if (f.is_constant()) {
        // one-sink diagram; the composite constructor would fold it anyway
        DiagramBuilder b({}, 1);
        std::uint32_t s = b.sink(f.is_true() ? 1 : 0);
        CompileStats stats;
        stats.nodes_created = 1;
        return {std::move(b).finalize(s), stats};
    }
    return compile(CompositeLineage(CombinatorFn::or_of(1), std::vector<MonotoneDnf>{f}), cfg);
}

} // namespace wmclab
